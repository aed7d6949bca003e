#include "entpdf/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace entpdf {

double Histogram::total_mass() const {
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return static_cast<double>(total) / static_cast<double>(sample_count);
}

int Histogram::modal_bin() const {
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                            counts.begin());
}

namespace {

void run_substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t count,
                   int bins, const SampleFn& fn, std::vector<std::uint64_t>& counts) {
    Rng rng = Rng::substream(seed, stream);
    for (std::uint64_t k = 0; k < count; ++k) {
        double e = fn(rng);
        int idx = static_cast<int>(e * bins);
        if (idx < 0) idx = 0;
        if (idx >= bins) idx = bins - 1;
        ++counts[idx];
    }
}

std::uint64_t stream_share(std::uint64_t n, std::uint64_t substreams, std::uint64_t s) {
    return n / substreams + (s < n % substreams ? 1 : 0);
}

}  // namespace

Histogram sample_histogram_serial(std::uint64_t n, std::uint64_t seed, const SampleFn& fn,
                                  const SampleOptions& opts) {
    Histogram h;
    h.bins = opts.bins;
    h.counts.assign(opts.bins, 0);
    h.sample_count = n;
    h.seed = seed;
    for (std::uint64_t s = 0; s < opts.substreams; ++s)
        run_substream(seed, s, stream_share(n, opts.substreams, s), opts.bins, fn,
                      h.counts);
    return h;
}

Histogram sample_histogram(std::uint64_t n, std::uint64_t seed, const SampleFn& fn,
                           const SampleOptions& opts) {
    if (!opts.parallel) return sample_histogram_serial(n, seed, fn, opts);
    Histogram h;
    h.bins = opts.bins;
    h.counts.assign(opts.bins, 0);
    h.sample_count = n;
    h.seed = seed;

    const std::int64_t streams = static_cast<std::int64_t>(opts.substreams);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(opts.bins, 0);
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t s = 0; s < streams; ++s)
            run_substream(seed, static_cast<std::uint64_t>(s),
                          stream_share(n, opts.substreams, s), opts.bins, fn, local);
#pragma omp critical
        {
            for (int i = 0; i < opts.bins; ++i) h.counts[i] += local[i];
        }
    }
    return h;
}

}  // namespace entpdf
