#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "entpdf/rng.hpp"

namespace entpdf {

inline constexpr int kDefaultBins = 100;
inline constexpr std::uint64_t kDefaultSubstreams = 256;

// Histogram of values on [0,1] with uniform bins. Counts are authoritative;
// densities are derived as count / (n * width).
struct Histogram {
    int bins = kDefaultBins;
    std::vector<std::uint64_t> counts;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;

    double bin_width() const { return 1.0 / bins; }
    double edge(int i) const { return static_cast<double>(i) / bins; }
    double center(int i) const { return (i + 0.5) / bins; }
    double mass(int i) const {
        return static_cast<double>(counts[i]) / static_cast<double>(sample_count);
    }
    double density(int i) const { return mass(i) * bins; }
    double total_mass() const;
    int modal_bin() const;
};

// One scalar sample per call; values outside [0,1] are clamped into the
// boundary bins (the samplers only overshoot by rounding error).
using SampleFn = std::function<double(Rng&)>;

struct SampleOptions {
    int bins = kDefaultBins;
    std::uint64_t substreams = kDefaultSubstreams;
    bool parallel = true;
};

// Splits n samples over `substreams` seed-derived streams. The merged counts
// are identical between the serial and OpenMP drivers for a fixed
// (seed, n, substreams) triple, because each stream's counts do not depend
// on the execution order.
Histogram sample_histogram(std::uint64_t n, std::uint64_t seed, const SampleFn& fn,
                           const SampleOptions& opts = {});

// Serial reference driver, kept for testing the parallel path.
Histogram sample_histogram_serial(std::uint64_t n, std::uint64_t seed, const SampleFn& fn,
                                  const SampleOptions& opts = {});

}  // namespace entpdf
