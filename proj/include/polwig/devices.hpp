#ifndef POLWIG_DEVICES_HPP
#define POLWIG_DEVICES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "polwig/errors.hpp"
#include "polwig/states.hpp"

namespace polwig {

struct Mat2 {
  Complex hh, hv, vh, vv;
};

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a.hh * b.hh + a.hv * b.vh, a.hh * b.hv + a.hv * b.vv,
          a.vh * b.hh + a.vv * b.vh, a.vh * b.hv + a.vv * b.vv};
}

inline Mat2 mat2_adjoint(const Mat2& a) {
  return {std::conj(a.hh), std::conj(a.vh), std::conj(a.hv), std::conj(a.vv)};
}

inline double unitarity_defect(const Mat2& a) {
  const Mat2 g = mat2_mul(mat2_adjoint(a), a);
  double d = std::abs(g.hh - Complex{1.0, 0.0});
  d = std::max(d, std::abs(g.vv - Complex{1.0, 0.0}));
  d = std::max(d, std::abs(g.hv));
  d = std::max(d, std::abs(g.vh));
  return d;
}

enum class FactorKind { compensator, rotator };

struct DeviceFactor {
  FactorKind kind;
  double param; // radians
};

// 2x2 mode-amplitude map plus the ordered factor list it was built from
// (first factor = first applied). The factor list is what the Fock oracle
// exponentiates, so keep it in sync with the matrix.
struct DeviceSpec {
  Mat2 matrix;
  std::vector<DeviceFactor> provenance;
};

// Differential phase shift between the H and V modes (half-angle phases, so
// phi = 2*pi gives -identity: same physical state, global phase aside).
inline DeviceSpec compensator(double phi) {
  const Complex e = std::polar(1.0, 0.5 * phi);
  return {{e, {0.0, 0.0}, {0.0, 0.0}, std::conj(e)},
          {{FactorKind::compensator, phi}}};
}

// Geometric rotation of the polarization plane by the full angle theta.
inline DeviceSpec rotator(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {{{c, 0.0}, {s, 0.0}, {-s, 0.0}, {c, 0.0}},
          {{FactorKind::rotator, theta}}};
}

// after . before (i.e. `before` acts on the state first).
inline DeviceSpec compose(const DeviceSpec& after, const DeviceSpec& before) {
  DeviceSpec out;
  out.matrix = mat2_mul(after.matrix, before.matrix);
  out.provenance = before.provenance;
  out.provenance.insert(out.provenance.end(), after.provenance.begin(),
                        after.provenance.end());
  return out;
}

// Compensator(phi_in), then rotator(theta), then compensator(phi_out).
inline DeviceSpec crc_device(double phi_in, double theta, double phi_out) {
  return compose(compensator(phi_out), compose(rotator(theta), compensator(phi_in)));
}

inline DeviceSpec inverse(const DeviceSpec& dev) {
  DeviceSpec out;
  out.matrix = mat2_adjoint(dev.matrix);
  out.provenance.reserve(dev.provenance.size());
  for (auto it = dev.provenance.rbegin(); it != dev.provenance.rend(); ++it)
    out.provenance.push_back({it->kind, -it->param});
  return out;
}

// Maps every branch amplitude pair through the device matrix. Coefficients
// are untouched; a unitary image of a normalized state stays normalized.
inline CoherentSuperposition apply_device(const CoherentSuperposition& psi,
                                          const DeviceSpec& dev) {
  require_normalized(psi, "apply_device");
  if (unitarity_defect(dev.matrix) > 1e-12)
    throw Error("apply_device: device matrix is not unitary");
  CoherentSuperposition out = psi;
  for (CoherentTerm& t : out.terms) {
    const Complex h = t.amp_h, v = t.amp_v;
    t.amp_h = dev.matrix.hh * h + dev.matrix.hv * v;
    t.amp_v = dev.matrix.vh * h + dev.matrix.vv * v;
  }
  return out;
}

// Concurrence of a normalized two-branch superposition
// c1|a1,b1> + c2|a2,b2>:  C = 2|c1 c2| sqrt((1-|<a1|a2>|^2)(1-|<b1|b2>|^2)).
// The denominator of the textbook form is the state norm, which is already
// absorbed into the coefficients here.
inline double concurrence(const CoherentSuperposition& psi) {
  require_normalized(psi, "concurrence");
  if (psi.terms.size() != 2)
    throw UnsupportedBranchCount("concurrence: need exactly 2 branches, got " +
                                 std::to_string(psi.terms.size()));
  const CoherentTerm& t1 = psi.terms[0];
  const CoherentTerm& t2 = psi.terms[1];
  const double sh = std::norm(overlap(t1.amp_h, t2.amp_h));
  const double sv = std::norm(overlap(t1.amp_v, t2.amp_v));
  const double rad = std::max(0.0, 1.0 - sh) * std::max(0.0, 1.0 - sv);
  return 2.0 * std::abs(t1.coeff) * std::abs(t2.coeff) * std::sqrt(rad);
}

} // namespace polwig

#endif
