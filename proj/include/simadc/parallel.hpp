#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace simadc {

// Runs fn(i) for i in [0, n). Each task must be self-contained and write only
// to its own result slot, so the outcome is independent of scheduling.
template <typename Fn>
void run_indexed_serial(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Parallel variant of run_indexed_serial. Produces identical results for any
// worker count; the first exception thrown by a task is rethrown after the
// remaining tasks finish.
template <typename Fn>
void run_indexed(std::size_t n, int workers, Fn&& fn) {
#ifdef _OPENMP
    if (workers > 1 && n > 1) {
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#else
    (void)workers;
#endif
    run_indexed_serial(n, std::forward<Fn>(fn));
}

}  // namespace simadc
