#ifndef POLWIG_FOCK_HPP
#define POLWIG_FOCK_HPP

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polwig/devices.hpp"
#include "polwig/errors.hpp"
#include "polwig/states.hpp"
#include "polwig/wigner.hpp"

// Truncated number-basis oracle. Everything here works from ladder-operator
// matrix elements and generic linear algebra, with no reuse of the coherent
// state closed forms, so agreement between the two paths is a real check.

namespace polwig {

using OperatorMatrix = Eigen::MatrixXcd;

inline int fock_dim(int n_max) { return (n_max + 1) * (n_max + 1); }

inline int fock_index(int n_max, int n_h, int n_v) {
  return n_h * (n_max + 1) + n_v;
}

inline int fock_total(int n_max, int index) {
  return index / (n_max + 1) + index % (n_max + 1);
}

// A state truncated at n_max photons per mode. `deficit` is the weight the
// truncation dropped: 1 - |v|^2 for a normalized source state.
struct FockVector {
  int n_max = 0;
  Eigen::VectorXcd amps;
  double deficit = 0.0;
};

inline FockVector fock_from_superposition(const CoherentSuperposition& psi,
                                          int n_max) {
  require_normalized(psi, "fock_from_superposition");
  if (n_max < 1)
    throw ConfigError("fock_from_superposition: n_max must be >= 1");
  FockVector v;
  v.n_max = n_max;
  v.amps = Eigen::VectorXcd::Zero(fock_dim(n_max));
  std::vector<Complex> ch(n_max + 1), cv(n_max + 1);
  for (const CoherentTerm& t : psi.terms) {
    ch[0] = std::exp(Complex{-0.5 * std::norm(t.amp_h), 0.0});
    cv[0] = std::exp(Complex{-0.5 * std::norm(t.amp_v), 0.0});
    for (int n = 1; n <= n_max; ++n) {
      ch[n] = ch[n - 1] * t.amp_h / std::sqrt(double(n));
      cv[n] = cv[n - 1] * t.amp_v / std::sqrt(double(n));
    }
    for (int nh = 0; nh <= n_max; ++nh)
      for (int nv = 0; nv <= n_max; ++nv)
        v.amps[fock_index(n_max, nh, nv)] += t.coeff * ch[nh] * cv[nv];
  }
  v.deficit = 1.0 - v.amps.squaredNorm();
  if (v.deficit > 1e-6)
    throw TruncationTooSevere(
        "fock_from_superposition: truncation drops weight " +
        std::to_string(v.deficit) + " at n_max " + std::to_string(n_max));
  return v;
}

// Lowering operators for the two modes.
inline OperatorMatrix ladder_h(int n_max) {
  OperatorMatrix a = OperatorMatrix::Zero(fock_dim(n_max), fock_dim(n_max));
  for (int nh = 1; nh <= n_max; ++nh)
    for (int nv = 0; nv <= n_max; ++nv)
      a(fock_index(n_max, nh - 1, nv), fock_index(n_max, nh, nv)) =
          std::sqrt(double(nh));
  return a;
}

inline OperatorMatrix ladder_v(int n_max) {
  OperatorMatrix a = OperatorMatrix::Zero(fock_dim(n_max), fock_dim(n_max));
  for (int nh = 0; nh <= n_max; ++nh)
    for (int nv = 1; nv <= n_max; ++nv)
      a(fock_index(n_max, nh, nv - 1), fock_index(n_max, nh, nv)) =
          std::sqrt(double(nv));
  return a;
}

struct StokesMatrices {
  int n_max = 0;
  OperatorMatrix s0, s1, s2, s3;
};

inline StokesMatrices stokes_matrices(int n_max) {
  const OperatorMatrix ah = ladder_h(n_max);
  const OperatorMatrix av = ladder_v(n_max);
  const OperatorMatrix nh = ah.adjoint() * ah;
  const OperatorMatrix nv = av.adjoint() * av;
  const OperatorMatrix x = ah.adjoint() * av;
  StokesMatrices s;
  s.n_max = n_max;
  s.s0 = nh + nv;
  s.s1 = nh - nv;
  s.s2 = x + x.adjoint();
  s.s3 = Complex{0.0, 1.0} * (x.adjoint() - x);
  return s;
}

inline Complex oracle_expectation(const FockVector& v,
                                  const OperatorMatrix& m) {
  if (m.rows() != v.amps.size() || m.cols() != v.amps.size())
    throw DimensionMismatch("oracle_expectation: operator is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", state has " +
                            std::to_string(v.amps.size()) + " amplitudes");
  const Complex num = (v.amps.adjoint() * m * v.amps)(0);
  return num / v.amps.squaredNorm();
}

// Frobenius norm of the block of m with both row and column inside the
// photon-number interior (total occupation < n_max), where truncation
// artifacts cannot reach.
inline double interior_norm(const OperatorMatrix& m, int n_max) {
  const int d = fock_dim(n_max);
  if (m.rows() != d || m.cols() != d)
    throw DimensionMismatch("interior_norm: matrix does not match n_max");
  double acc = 0.0;
  for (int r = 0; r < d; ++r) {
    if (fock_total(n_max, r) >= n_max) continue;
    for (int c = 0; c < d; ++c) {
      if (fock_total(n_max, c) >= n_max) continue;
      acc += std::norm(m(r, c));
    }
  }
  return std::sqrt(acc);
}

// Dense Taylor exponential with scaling and squaring; meant for single-mode
// sized matrices (a few dozen rows), not the full two-mode space.
inline Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::pow(2.0, s) > 0.5) ++s;
  const Eigen::MatrixXcd a = m / std::pow(2.0, s);
  Eigen::MatrixXcd result =
      Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd term = result;
  for (int j = 1; j <= 40; ++j) {
    term = (a * term) / double(j);
    result += term;
    if (term.norm() <= 1e-20 * result.norm()) break;
  }
  for (int j = 0; j < s; ++j) result = result * result;
  return result;
}

// Single-mode matrices on the (n_max + 1)-dimensional mode space.
inline Eigen::MatrixXcd mode_lowering(int n_max) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

inline Eigen::MatrixXcd mode_parity(int n_max) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

inline Eigen::MatrixXcd mode_displacement(int n_max, Complex xi) {
  const Eigen::MatrixXcd a = mode_lowering(n_max);
  return matrix_exp(Eigen::MatrixXcd(xi * a.adjoint() - std::conj(xi) * a));
}

// W(q1,p1,q2,p2) as the displaced-parity expectation
// (1/pi^2) <v| D1 P1 D1^+ (x) D2 P2 D2^+ |v>, evaluated per mode on the
// single-mode spaces and contracted through the amplitude matrix.
inline double oracle_wigner_point(const FockVector& v, const PhasePoint4& pt) {
  static const double kSqrt2 = std::sqrt(2.0);
  const int n = v.n_max;
  const auto mode_kernel = [n](double q, double p) {
    const Complex xi{q / kSqrt2, p / kSqrt2};
    const Eigen::MatrixXcd d = mode_displacement(n, xi);
    return Eigen::MatrixXcd(d * mode_parity(n) * d.adjoint());
  };
  const Eigen::MatrixXcd mh = mode_kernel(pt.q1, pt.p1);
  const Eigen::MatrixXcd mv = mode_kernel(pt.q2, pt.p2);
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic,
                                       Eigen::Dynamic, Eigen::RowMajor>>
      amp(v.amps.data(), n + 1, n + 1);
  const Eigen::MatrixXcd x = mh * (amp * mv.transpose());
  const Complex w = (amp.conjugate().cwiseProduct(x)).sum() / (M_PI * M_PI);
  if (std::abs(w.imag()) > 1e-10 * std::max(1.0, std::abs(w.real())))
    throw Error("oracle_wigner_point: imaginary residue " +
                std::to_string(w.imag()));
  return w.real();
}

// Purity of the reduced single-mode state after tracing out the V mode.
// The truncation deficit is absorbed by normalizing with the trace.
inline double oracle_reduced_purity(const FockVector& v) {
  const int n = v.n_max;
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic,
                                       Eigen::Dynamic, Eigen::RowMajor>>
      amp(v.amps.data(), n + 1, n + 1);
  const Eigen::MatrixXcd rho = amp * amp.adjoint();
  const double tr = rho.trace().real();
  return rho.squaredNorm() / (tr * tr);
}

struct UnpolarizedCheck {
  double s1_comm_norm = 0.0;
  double s3_comm_norm = 0.0;
};

// Interior Frobenius norms of [rho, S1] and [rho, S3]. Both vanish exactly
// when the state is invariant under rotations about those Stokes axes.
inline UnpolarizedCheck oracle_unpolarized_check(const FockVector& v) {
  const StokesMatrices s = stokes_matrices(v.n_max);
  const Eigen::VectorXcd u = v.amps / v.amps.norm();
  const Eigen::MatrixXcd rho = u * u.adjoint();
  const Eigen::MatrixXcd c1 = rho * s.s1 - s.s1 * rho;
  const Eigen::MatrixXcd c3 = rho * s.s3 - s.s3 * rho;
  return {interior_norm(c1, v.n_max), interior_norm(c3, v.n_max)};
}

// Exact diagonal action of the compensator in the number basis.
inline void apply_compensator_fock(FockVector& v, double phi) {
  const int n = v.n_max;
  for (int nh = 0; nh <= n; ++nh)
    for (int nv = 0; nv <= n; ++nv)
      v.amps[fock_index(n, nh, nv)] *= std::polar(1.0, 0.5 * phi * (nh - nv));
}

// exp(theta (aH^+ aV - aV^+ aH)) |v> by scaled Taylor sweeps. The truncated
// generator stays anti-Hermitian, so the map is exactly unitary on the
// truncated space; only the boundary shells differ from the untruncated
// rotation.
inline void apply_rotator_fock(FockVector& v, double theta) {
  const int n = v.n_max;
  const auto gen_apply = [n](const Eigen::VectorXcd& in, double scale) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (int nh = 0; nh <= n; ++nh)
      for (int nv = 0; nv <= n; ++nv) {
        Complex acc{0.0, 0.0};
        if (nh >= 1 && nv + 1 <= n)
          acc += std::sqrt(double(nh) * (nv + 1)) *
                 in[fock_index(n, nh - 1, nv + 1)];
        if (nv >= 1 && nh + 1 <= n)
          acc -= std::sqrt(double(nv) * (nh + 1)) *
                 in[fock_index(n, nh + 1, nv - 1)];
        out[fock_index(n, nh, nv)] = scale * acc;
      }
    return out;
  };
  const double bound = std::abs(theta) * (2.0 * n + 1.0);
  int k = 0;
  while (bound / std::pow(2.0, k) > 0.5) ++k;
  const int steps = 1 << k;
  const double scale = theta / steps;
  for (int step = 0; step < steps; ++step) {
    Eigen::VectorXcd result = v.amps;
    Eigen::VectorXcd term = v.amps;
    for (int j = 1; j <= 40; ++j) {
      term = gen_apply(term, scale / j);
      result += term;
      if (term.norm() <= 1e-20 * result.norm()) break;
    }
    v.amps = std::move(result);
  }
}

// Applies the device factor by factor in application order, each one as the
// exponential of its own generator; the device's 2x2 amplitude matrix is
// never consulted here.
inline FockVector oracle_apply_device(const FockVector& v,
                                      const DeviceSpec& dev) {
  FockVector out = v;
  for (const DeviceFactor& f : dev.provenance) {
    if (f.kind == FactorKind::compensator)
      apply_compensator_fock(out, f.param);
    else
      apply_rotator_fock(out, f.param);
  }
  return out;
}

// Husimi function over polarization directions, summed over the total
// photon number sectors: Q = sum_N (N+1)/(4 pi) |<N; theta, phi | v>|^2.
inline double su2_q_point(const FockVector& v, double theta, double phi) {
  const int n = v.n_max;
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  double q = 0.0;
  for (int total = 0; total <= n; ++total) {
    Complex proj{0.0, 0.0};
    double binom = 1.0;
    for (int k = 0; k <= total; ++k) {
      if (k > 0) binom *= double(total - k + 1) / k;
      const Complex dir = std::sqrt(binom) *
                          ipow(c * std::polar(1.0, -phi), unsigned(k)) *
                          std::pow(s, total - k);
      proj += std::conj(dir) * v.amps[fock_index(n, k, total - k)];
    }
    q += (total + 1) * std::norm(proj) / (4.0 * M_PI);
  }
  return q;
}

// Harmonic-oscillator eigenfunctions phi_0..phi_n at q, by recurrence.
inline Eigen::VectorXd oscillator_basis(int n_max, double q) {
  Eigen::VectorXd phi(n_max + 1);
  phi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * q * q);
  if (n_max >= 1) phi[1] = std::sqrt(2.0) * q * phi[0];
  for (int n = 2; n <= n_max; ++n)
    phi[n] = std::sqrt(2.0 / n) * q * phi[n - 1] -
             std::sqrt(double(n - 1) / n) * phi[n - 2];
  return phi;
}

// Marginal position density of the H mode, all other coordinates traced out.
inline double position_density_h(const FockVector& v, double q) {
  const int n = v.n_max;
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic,
                                       Eigen::Dynamic, Eigen::RowMajor>>
      amp(v.amps.data(), n + 1, n + 1);
  const Eigen::VectorXd phi = oscillator_basis(n, q);
  return (amp.adjoint() * phi.cast<Complex>()).squaredNorm();
}

} // namespace polwig

#endif
