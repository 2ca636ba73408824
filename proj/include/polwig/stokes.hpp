#ifndef POLWIG_STOKES_HPP
#define POLWIG_STOKES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "polwig/errors.hpp"
#include "polwig/quadrature.hpp"
#include "polwig/reduction.hpp"
#include "polwig/states.hpp"

namespace polwig {

struct StokesStats {
  std::array<double, 4> mean{};          // S0..S3
  std::array<double, 3> second_moment{}; // S1^2..S3^2
  std::array<double, 3> variance{};      // S1..S3
};

namespace detail {
inline double real_checked(Complex z, const char* what) {
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, std::abs(z.real())))
    throw Error(std::string(what) + ": imaginary residue " +
                std::to_string(z.imag()));
  return z.real();
}
} // namespace detail

// First and second moments of the Stokes operators from normal-ordered
// expectations. The reordering constants come from one application of the
// mode commutators per operator product.
inline StokesStats stokes_stats(const CoherentSuperposition& psi) {
  require_normalized(psi, "stokes_stats");
  const auto e = [&psi](unsigned m, unsigned n, unsigned p, unsigned q) {
    return expect_normal_ordered(psi, m, n, p, q);
  };
  const Complex e1100 = e(1, 1, 0, 0), e0011 = e(0, 0, 1, 1);
  const Complex e1001 = e(1, 0, 0, 1), e0110 = e(0, 1, 1, 0);
  const Complex e2200 = e(2, 2, 0, 0), e0022 = e(0, 0, 2, 2);
  const Complex e1111 = e(1, 1, 1, 1);
  const Complex e2002 = e(2, 0, 0, 2), e0220 = e(0, 2, 2, 0);
  const Complex i{0.0, 1.0};

  StokesStats s;
  s.mean[0] = detail::real_checked(e1100 + e0011, "stokes_stats <S0>");
  s.mean[1] = detail::real_checked(e1100 - e0011, "stokes_stats <S1>");
  s.mean[2] = detail::real_checked(e1001 + e0110, "stokes_stats <S2>");
  s.mean[3] = detail::real_checked(i * (e0110 - e1001), "stokes_stats <S3>");
  s.second_moment[0] = detail::real_checked(
      e2200 + e1100 - 2.0 * e1111 + e0022 + e0011, "stokes_stats <S1^2>");
  s.second_moment[1] = detail::real_checked(
      e2002 + e0220 + 2.0 * e1111 + e1100 + e0011, "stokes_stats <S2^2>");
  s.second_moment[2] = detail::real_checked(
      -e2002 - e0220 + 2.0 * e1111 + e1100 + e0011, "stokes_stats <S3^2>");
  for (int k = 0; k < 3; ++k)
    s.variance[k] = s.second_moment[k] - s.mean[k + 1] * s.mean[k + 1];
  return s;
}

// Mean of S0^2, needed occasionally alongside the stats proper.
inline double stokes_s0_second_moment(const CoherentSuperposition& psi) {
  require_normalized(psi, "stokes_s0_second_moment");
  const auto e = [&psi](unsigned m, unsigned n, unsigned p, unsigned q) {
    return expect_normal_ordered(psi, m, n, p, q);
  };
  return detail::real_checked(e(2, 2, 0, 0) + e(1, 1, 0, 0) +
                                  2.0 * e(1, 1, 1, 1) + e(0, 0, 2, 2) +
                                  e(0, 0, 1, 1),
                              "stokes_s0_second_moment");
}

// SU(2) Q function over polarization directions, normalized so that the
// integral over the unit sphere is 1. Closed form: each branch pair
// contributes (1 + z) e^z with z the product of the rotated-mode overlaps.
inline double q_function(const CoherentSuperposition& psi, double theta,
                         double phi) {
  require_normalized(psi, "q_function");
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const Complex dir = c * std::polar(1.0, phi);
  const size_t k = psi.terms.size();
  std::vector<Complex> w(k);
  std::vector<double> weight(k);
  for (size_t j = 0; j < k; ++j) {
    const CoherentTerm& t = psi.terms[j];
    w[j] = dir * t.amp_h + s * t.amp_v;
    weight[j] = std::norm(t.amp_h) + std::norm(t.amp_v);
  }
  Complex acc{0.0, 0.0};
  for (size_t j = 0; j < k; ++j)
    for (size_t l = 0; l < k; ++l) {
      const Complex z = std::conj(w[j]) * w[l];
      acc += std::conj(psi.terms[j].coeff) * psi.terms[l].coeff *
             std::exp(z - 0.5 * (weight[j] + weight[l])) * (1.0 + z);
    }
  return detail::real_checked(acc, "q_function") / (4.0 * M_PI);
}

struct SphereDirection {
  double theta = 0.0, phi = 0.0;
};

// Product rule on the sphere: Gauss-Legendre in cos(theta), uniform in phi.
// Weights sum to 4 pi.
struct SphereQuadrature {
  int n_theta = 0, n_phi = 0;
  std::vector<SphereDirection> dirs;
  std::vector<double> weights;
};

inline SphereQuadrature make_sphere_quadrature(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2)
    throw ConfigError("make_sphere_quadrature: need at least 2 nodes per axis");
  SphereQuadrature q;
  q.n_theta = n_theta;
  q.n_phi = n_phi;
  const Quad1D gu = gauss_legendre(n_theta, -1.0, 1.0);
  const Quad1D gp = periodic_uniform(n_phi, 2.0 * M_PI);
  q.dirs.reserve(static_cast<size_t>(n_theta) * n_phi);
  q.weights.reserve(static_cast<size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      q.dirs.push_back({std::acos(gu.nodes[i]), gp.nodes[j]});
      q.weights.push_back(gu.weights[i] * gp.weights[j]);
    }
  return q;
}

namespace detail {
inline double q_deviation_integral(const CoherentSuperposition& psi,
                                   const SphereQuadrature& quad) {
  const double uniform = 1.0 / (4.0 * M_PI);
  const double sum = deterministic_parallel_sum(
      static_cast<int>(quad.dirs.size()), [&](int i) {
        const double dq =
            q_function(psi, quad.dirs[i].theta, quad.dirs[i].phi) - uniform;
        return quad.weights[i] * dq * dq;
      });
  return 4.0 * M_PI * sum;
}
} // namespace detail

// Degree of polarization P = D / (1 + D) with D the squared deviation of Q
// from the uniform distribution, scaled by 4 pi. Exactly 0 for unpolarized
// states, approaching 1 for macroscopic polarized ones. The quadrature is
// re-run with doubled theta resolution; disagreement beyond tol means the
// requested rule is too coarse for this state.
inline double polarization_degree(const CoherentSuperposition& psi,
                                  const SphereQuadrature& quad,
                                  double tol = 1e-6) {
  require_normalized(psi, "polarization_degree");
  if (!(tol > 0.0))
    throw ConfigError("polarization_degree: tol must be positive");
  const double d = detail::q_deviation_integral(psi, quad);
  const SphereQuadrature finer =
      make_sphere_quadrature(2 * quad.n_theta, quad.n_phi);
  const double d_fine = detail::q_deviation_integral(psi, finer);
  if (std::abs(d - d_fine) > tol * std::max(1.0, std::abs(d_fine)))
    throw QuadratureTooCoarse(
        "polarization_degree: doubling n_theta moves D by " +
        std::to_string(std::abs(d - d_fine)));
  return d / (1.0 + d);
}

enum class StateFamily { psi1, psi2, psi3 };

inline CoherentSuperposition make_family_state(StateFamily family,
                                               double alpha, Complex beta) {
  switch (family) {
    case StateFamily::psi1: return make_psi1(alpha, beta);
    case StateFamily::psi2: return make_psi2(alpha);
    default: return make_psi3(alpha);
  }
}

struct VarianceRow {
  double alpha_sq = 0.0;
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;
};

// Stokes variances along a |alpha|^2 scan; beta only matters for psi1.
inline std::vector<VarianceRow> variance_sweep(
    StateFamily family, Complex beta, const std::vector<double>& alpha_sq) {
  std::vector<VarianceRow> rows;
  rows.reserve(alpha_sq.size());
  for (double a2 : alpha_sq) {
    if (a2 < 0.0)
      throw ConfigError("variance_sweep: negative |alpha|^2 in range");
    const StokesStats s =
        stokes_stats(make_family_state(family, std::sqrt(a2), beta));
    rows.push_back({a2, s.variance[0], s.variance[1], s.variance[2]});
  }
  return rows;
}

struct PolarizationRow {
  double alpha_sq = 0.0;
  double p_horizontal_vertical = 0.0;
  double p_diagonal = 0.0;
};

// P along |alpha|^2 for the axis states |alpha,0> (equal to |0,alpha> by
// symmetry) and the diagonal states |alpha,alpha>.
inline std::vector<PolarizationRow> polarization_sweep(
    const std::vector<double>& alpha_sq, const SphereQuadrature& quad,
    double tol = 1e-6) {
  std::vector<PolarizationRow> rows;
  rows.reserve(alpha_sq.size());
  for (double a2 : alpha_sq) {
    if (a2 < 0.0)
      throw ConfigError("polarization_sweep: negative |alpha|^2 in range");
    const double a = std::sqrt(a2);
    const double p_axis =
        polarization_degree(make_coherent(a, 0.0), quad, tol);
    const double p_diag =
        polarization_degree(make_coherent(a, a), quad, tol);
    rows.push_back({a2, p_axis, p_diag});
  }
  return rows;
}

} // namespace polwig

#endif
