#pragma once

#include <exception>

namespace homog::detail {

// Runs body(i) for i in [0, n), serially or with OpenMP; rethrows the first
// exception after the loop.
template <typename Body> void for_each_index(long n, bool parallel, Body&& body)
{
    if (!parallel) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(homog_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace homog::detail
