#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ghat {

inline int num_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int thread_id() {
#if defined(_OPENMP)
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Static-schedule parallel loop over [0, n). The schedule is deterministic for
// a fixed thread count, so reductions built on per-thread accumulators give
// byte-identical results across reruns.
template <typename Body>
void parallel_for(long n, Body&& body) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) body(i);
#else
  for (long i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace ghat
