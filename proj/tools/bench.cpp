// Timing comparison of the serial reference and the OpenMP sampling drivers.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "entpdf/pps.hpp"
#include "entpdf/subspace_pdf.hpp"

using namespace entpdf;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t n = (argc > 1) ? std::strtoull(argv[1], nullptr, 10) : 10'000'000ULL;
    const std::uint64_t seed = 42;

    SampleOptions serial;
    serial.parallel = false;
    SampleOptions parallel;

    std::printf("samples per kernel: %llu, threads: %d\n",
                static_cast<unsigned long long>(n), omp_get_max_threads());
    std::printf("%-10s %12s %12s %9s %6s\n", "kernel", "serial[ms]", "openmp[ms]",
                "speedup", "match");

    struct Case {
        const char* name;
        Histogram (*run)(std::uint64_t, std::uint64_t, const SampleOptions&);
    };
    const Case cases[] = {
        {"pi2", [](std::uint64_t n, std::uint64_t s, const SampleOptions& o) {
             return sample_pi2(0.5299, 0.0849, n, s, o);
         }},
        {"pi3", [](std::uint64_t n, std::uint64_t s, const SampleOptions& o) {
             return sample_pi3_value(0.4, n, s, o);
         }},
        {"pi4", [](std::uint64_t n, std::uint64_t s, const SampleOptions& o) {
             return sample_pi4(n, s, o);
         }},
    };

    for (const Case& c : cases) {
        Histogram hs, hp;
        double ts = time_ms([&] { hs = c.run(n, seed, serial); });
        double tp = time_ms([&] { hp = c.run(n, seed, parallel); });
        bool match = hs.counts == hp.counts;
        std::printf("%-10s %12.1f %12.1f %8.2fx %6s\n", c.name, ts, tp, ts / tp,
                    match ? "yes" : "NO");
        if (!match) return 1;
    }
    return 0;
}
