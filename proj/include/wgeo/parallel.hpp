#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wgeo {

// Execution policy for the data-parallel kernels. Every parallel kernel has
// a serial twin selected by Exec::serial; tests compare the two paths and
// the benchmark times them against each other.
enum class Exec { serial, par };

// Exceptions thrown by the body are caught inside the OpenMP region (where
// letting them escape would terminate the process) and rethrown afterwards;
// the first one wins.
template <class F>
void parallel_for(std::size_t count, Exec ex, F&& body) {
    if (ex == Exec::par) {
#ifdef _OPENMP
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(wgeo_parallel_for_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
#endif
    }
    for (std::size_t i = 0; i < count; ++i) body(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace wgeo
