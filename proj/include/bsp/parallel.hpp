#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bsp::par {

// Runs fn(i) for i in [0, count). threads == 0 selects the serial reference
// path; otherwise an OpenMP parallel loop with dynamic scheduling (threads < 0
// leaves the team size to the runtime). Bodies must be independent and write
// to disjoint slots so that both paths produce identical results.
template <class Fn>
void for_index(std::ptrdiff_t count, int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads != 0) {
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
      for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
    } else {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
    }
    return;
  }
#else
  (void)threads;
#endif
  for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
}

}  // namespace bsp::par
