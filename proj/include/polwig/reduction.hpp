#ifndef POLWIG_REDUCTION_HPP
#define POLWIG_REDUCTION_HPP

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polwig {

// Fixed-tree pairwise summation. The reduction order depends only on n, so
// results are bitwise reproducible no matter how the values were produced.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size());
}

// Evaluates fn(i) for i in [0, n) in parallel, then combines the values with
// the fixed pairwise tree. Worker count never changes the result bytes.
template <class Fn>
double deterministic_parallel_sum(std::size_t n, Fn&& fn) {
  std::vector<double> vals(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    vals[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return pairwise_sum(vals);
}

template <class Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
}

} // namespace polwig

#endif
