// Compares the serial task runner against the OpenMP one on a batch of
// independent conversions and checks that both produce identical counts.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "simadc/adc.hpp"
#include "simadc/config.hpp"
#include "simadc/parallel.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    const simadc::SimConfig cfg = simadc::parse_config("", "builtin-defaults");
    const simadc::Magnet magnet = simadc::make_magnet(cfg);

    simadc::AdcParams adc = cfg.adc;
    adc.t_s = 1.0e-6;  // keep the batch short; relative timing is what matters

    constexpr std::size_t kTasks = 8;
    std::vector<double> volts(kTasks);
    for (std::size_t i = 0; i < kTasks; ++i)
        volts[i] = adc.v_min + (adc.v_max - adc.v_min) * static_cast<double>(i) /
                                   static_cast<double>(kTasks - 1);

    auto run_batch = [&](std::vector<std::uint64_t>& counts, auto&& runner) {
        counts.assign(kTasks, 0);
        runner(kTasks, [&](std::size_t i) {
            counts[i] = simadc::convert(volts[i], magnet, cfg.device, adc, cfg.integ, i).c_out;
        });
    };

    std::vector<std::uint64_t> serial_counts;
    auto t0 = std::chrono::steady_clock::now();
    run_batch(serial_counts, [](std::size_t n, auto&& fn) {
        simadc::run_indexed_serial(n, fn);
    });
    const double serial_s = seconds_since(t0);

    int workers = 1;
#ifdef _OPENMP
    workers = omp_get_max_threads();
#endif
    std::vector<std::uint64_t> parallel_counts;
    t0 = std::chrono::steady_clock::now();
    run_batch(parallel_counts, [workers](std::size_t n, auto&& fn) {
        simadc::run_indexed(n, workers, fn);
    });
    const double parallel_s = seconds_since(t0);

    if (serial_counts != parallel_counts) {
        std::fprintf(stderr, "FAIL: serial and parallel counts differ\n");
        return 1;
    }

    std::printf("tasks:            %zu conversions of %.3g s each\n", kTasks, adc.t_s);
    std::printf("serial runner:    %.3f s\n", serial_s);
    std::printf("parallel runner:  %.3f s (%d workers)\n", parallel_s, workers);
    std::printf("speedup:          %.2fx\n", serial_s / parallel_s);
    std::printf("results identical across runners\n");
    return 0;
}
