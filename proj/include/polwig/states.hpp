#ifndef POLWIG_STATES_HPP
#define POLWIG_STATES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "polwig/errors.hpp"

namespace polwig {

using Complex = std::complex<double>;

// Branch amplitudes up to |amp| = 6 are supported by every numeric routine
// (grid extents, quadrature orders and Fock cutoffs are sized for this).
inline constexpr double kMaxSupportedAmp = 6.0;

// Norms at or below this are treated as zero.
inline constexpr double kNormEpsilon = 1e-14;

// One coherent branch c * |amp_h, amp_v>.
struct CoherentTerm {
  Complex coeff{1.0, 0.0};
  Complex amp_h{0.0, 0.0};
  Complex amp_v{0.0, 0.0};
};

// Finite superposition of two-mode coherent branches. Branches are kept as
// given; nothing ever merges two branches with equal amplitudes.
struct CoherentSuperposition {
  std::vector<CoherentTerm> terms;
  bool normalized = false;
};

inline Complex ipow(Complex base, unsigned e) {
  Complex r{1.0, 0.0};
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

// <g|a> for single-mode coherent states.
inline Complex overlap(Complex a, Complex g) {
  return std::exp(std::conj(g) * a - 0.5 * (std::norm(a) + std::norm(g)));
}

// <bra branch | ket branch>, coefficients not included.
inline Complex branch_overlap(const CoherentTerm& bra, const CoherentTerm& ket) {
  return overlap(ket.amp_h, bra.amp_h) * overlap(ket.amp_v, bra.amp_v);
}

// <psi|phi> including coefficients, via the branch Gram matrix.
inline Complex inner_product(const CoherentSuperposition& psi,
                             const CoherentSuperposition& phi) {
  Complex acc{0.0, 0.0};
  for (const CoherentTerm& b : psi.terms)
    for (const CoherentTerm& k : phi.terms)
      acc += std::conj(b.coeff) * k.coeff * branch_overlap(b, k);
  return acc;
}

inline double norm_squared(const CoherentSuperposition& psi) {
  return inner_product(psi, psi).real();
}

// Rescales coefficients by the positive real 1/sqrt(<psi|psi>).
inline CoherentSuperposition normalize(const CoherentSuperposition& psi) {
  const double n2 = norm_squared(psi);
  if (!(n2 > kNormEpsilon))
    throw ZeroNormState("normalize: state norm^2 " + std::to_string(n2) +
                        " is at or below 1e-14");
  const double scale = 1.0 / std::sqrt(n2);
  CoherentSuperposition out = psi;
  for (CoherentTerm& t : out.terms) t.coeff *= scale;
  out.normalized = true;
  return out;
}

inline void require_normalized(const CoherentSuperposition& psi, const char* who) {
  if (!psi.normalized)
    throw UnnormalizedState(std::string(who) + ": input state is not normalized");
}

inline double max_branch_amp(const CoherentSuperposition& psi) {
  double m = 0.0;
  for (const CoherentTerm& t : psi.terms)
    m = std::max(m, std::max(std::abs(t.amp_h), std::abs(t.amp_v)));
  return m;
}

// Displaces both modes. Each coefficient picks up the Weyl phase, so the
// result is the displaced state exactly, not just branch-by-branch.
inline CoherentSuperposition displace(const CoherentSuperposition& psi,
                                      Complex dh, Complex dv) {
  CoherentSuperposition out = psi;
  for (CoherentTerm& t : out.terms) {
    const double phase = std::imag(dh * std::conj(t.amp_h)) +
                         std::imag(dv * std::conj(t.amp_v));
    t.coeff *= std::polar(1.0, phase);
    t.amp_h += dh;
    t.amp_v += dv;
  }
  return out;
}

// The three named superposition families: equal-weight two-branch states,
// normalized on construction.
inline CoherentSuperposition make_psi1(Complex alpha, Complex beta) {
  CoherentSuperposition s;
  s.terms = {{{1.0, 0.0}, alpha, beta}, {{1.0, 0.0}, beta, alpha}};
  return normalize(s);
}

inline CoherentSuperposition make_psi2(Complex alpha) {
  CoherentSuperposition s;
  s.terms = {{{1.0, 0.0}, -alpha, -alpha}, {{1.0, 0.0}, alpha, alpha}};
  return normalize(s);
}

inline CoherentSuperposition make_psi3(Complex alpha) {
  CoherentSuperposition s;
  s.terms = {{{1.0, 0.0}, alpha, Complex{0.0, 0.0}},
             {{1.0, 0.0}, Complex{0.0, 0.0}, alpha}};
  return normalize(s);
}

// Plain two-mode coherent state |alpha_h, alpha_v>; already unit norm.
inline CoherentSuperposition make_coherent(Complex alpha_h, Complex alpha_v) {
  CoherentSuperposition s;
  s.terms = {{{1.0, 0.0}, alpha_h, alpha_v}};
  s.normalized = true;
  return s;
}

// <aH^dag^m aH^n aV^dag^p aV^q> for a normalized superposition. On a branch
// pair the normal-ordered string just picks up conjugated bra amplitudes to
// the dagger powers and ket amplitudes to the rest, times the branch overlap.
inline Complex expect_normal_ordered(const CoherentSuperposition& psi,
                                     unsigned m, unsigned n, unsigned p,
                                     unsigned q) {
  require_normalized(psi, "expect_normal_ordered");
  Complex acc{0.0, 0.0};
  for (const CoherentTerm& b : psi.terms)
    for (const CoherentTerm& k : psi.terms) {
      const Complex moment = ipow(std::conj(b.amp_h), m) * ipow(k.amp_h, n) *
                             ipow(std::conj(b.amp_v), p) * ipow(k.amp_v, q);
      acc += std::conj(b.coeff) * k.coeff * moment * branch_overlap(b, k);
    }
  return acc;
}

} // namespace polwig

#endif
