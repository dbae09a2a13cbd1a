#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace smokecast {

// Runs body(i) for i in [0, n). When `parallel` is set and the build has
// OpenMP, iterations are distributed across threads; otherwise this is a
// plain loop. Bodies must write only to per-index slots so both paths
// produce identical output.
template <typename Body>
void parallel_for(std::size_t n, bool parallel, const Body& body) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace smokecast
