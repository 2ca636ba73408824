#ifndef POLWIG_QUADRATURE_HPP
#define POLWIG_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polwig {

struct Quad1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]. Newton iteration from the Chebyshev-angle
// initial guess; exact for polynomials up to degree 2n-1.
inline Quad1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Quad1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to P_n, tracking the derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

// Same rule mapped to [a, b].
inline Quad1D gauss_legendre(int n, double a, double b) {
  Quad1D q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

// Uniform rule for periodic integrands on [0, period); spectrally accurate
// for smooth periodic functions.
inline Quad1D periodic_uniform(int n, double period) {
  if (n < 1) throw std::invalid_argument("periodic_uniform: n must be >= 1");
  Quad1D q;
  q.nodes.resize(n);
  q.weights.assign(n, period / n);
  for (int i = 0; i < n; ++i) q.nodes[i] = period * i / n;
  return q;
}

} // namespace polwig

#endif
