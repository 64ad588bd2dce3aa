#ifndef FROBCAT_PARALLEL_HPP_
#define FROBCAT_PARALLEL_HPP_

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frobcat {

enum class Exec { serial, openmp };

/// Runs fn(i) for i in [0, n). Iterations must be independent and write
/// only to their own slot of any shared output, which keeps the two modes
/// bit-identical; the serial mode is the reference the tests compare
/// against.
template <typename Fn>
void for_each_index(int64_t n, Exec mode, Fn&& fn) {
#ifdef _OPENMP
  if (mode == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
#else
  (void)mode;
#endif
  for (int64_t i = 0; i < n; ++i) fn(i);
}

inline bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace frobcat

#endif  // FROBCAT_PARALLEL_HPP_
