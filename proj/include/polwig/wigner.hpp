#ifndef POLWIG_WIGNER_HPP
#define POLWIG_WIGNER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "polwig/errors.hpp"
#include "polwig/quadrature.hpp"
#include "polwig/reduction.hpp"
#include "polwig/states.hpp"

namespace polwig {

struct PhasePoint4 {
  double q1 = 0.0, p1 = 0.0, q2 = 0.0, p2 = 0.0;
};

enum class GridRule { gauss_legendre, trapezoid };

// Shared 1D rule applied to all four phase-space axes.
struct PhaseGrid {
  double half_width = 0.0;
  int nodes_per_axis = 0;
  GridRule rule = GridRule::gauss_legendre;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline PhaseGrid make_phase_grid(double half_width, int nodes_per_axis,
                                 GridRule rule = GridRule::gauss_legendre) {
  if (!(half_width > 0.0))
    throw ConfigError("make_phase_grid: half_width must be positive");
  if (nodes_per_axis < 2)
    throw ConfigError("make_phase_grid: need at least 2 nodes per axis");
  PhaseGrid g;
  g.half_width = half_width;
  g.nodes_per_axis = nodes_per_axis;
  g.rule = rule;
  if (rule == GridRule::gauss_legendre) {
    Quad1D q = gauss_legendre(nodes_per_axis, -half_width, half_width);
    g.nodes = std::move(q.nodes);
    g.weights = std::move(q.weights);
  } else {
    const double h = 2.0 * half_width / (nodes_per_axis - 1);
    g.nodes.resize(nodes_per_axis);
    g.weights.assign(nodes_per_axis, h);
    for (int i = 0; i < nodes_per_axis; ++i) g.nodes[i] = -half_width + h * i;
    g.weights.front() = 0.5 * h;
    g.weights.back() = 0.5 * h;
  }
  return g;
}

// Width that comfortably covers the Gaussian tails of every branch.
inline double required_half_width(const CoherentSuperposition& psi) {
  return std::sqrt(2.0) * max_branch_amp(psi) + 6.0;
}

inline void check_grid_for_state(const PhaseGrid& grid,
                                 const CoherentSuperposition& psi,
                                 const char* who) {
  const double need = required_half_width(psi);
  if (grid.half_width + 1e-12 < need)
    throw GridTooSmall(std::string(who) + ": grid half_width " +
                       std::to_string(grid.half_width) +
                       " below required " + std::to_string(need));
}

// Weyl transform of |a><g| for one mode, at phase-space point (q, p) with
// the convention a = (q + i p)/sqrt(2). Integrates to <g|a> over the plane;
// for a == g this is the usual Gaussian of a coherent state, 1/pi at peak.
inline Complex cross_wigner_kernel(Complex a, Complex g, double q, double p) {
  static const double kSqrt2 = std::sqrt(2.0);
  const double ar = a.real(), ai = a.imag();
  const double gr = g.real(), gi = g.imag();
  const double dq = q - (ar + gr) / kSqrt2;
  const double dp = p - (ai + gi) / kSqrt2;
  const double mag = std::exp(-dq * dq - dp * dp) / M_PI;
  const double phase = std::imag(std::conj(a) * g) +
                       kSqrt2 * (q * (ai - gi) - p * (ar - gr));
  return std::polar(mag, phase);
}

inline double wigner_point(const CoherentSuperposition& psi,
                           const PhasePoint4& pt) {
  require_normalized(psi, "wigner_point");
  Complex acc{0.0, 0.0};
  for (const CoherentTerm& bra : psi.terms)
    for (const CoherentTerm& ket : psi.terms)
      acc += std::conj(bra.coeff) * ket.coeff *
             cross_wigner_kernel(ket.amp_h, bra.amp_h, pt.q1, pt.p1) *
             cross_wigner_kernel(ket.amp_v, bra.amp_v, pt.q2, pt.p2);
  if (std::abs(acc.imag()) > 1e-12 * std::max(1.0, std::abs(acc.real())))
    throw Error("wigner_point: imaginary residue " +
                std::to_string(acc.imag()));
  return acc.real();
}

// Per-mode kernel samples for every branch pair, flattened as iq*nodes+ip.
// Pair (j, k) holds the kernel of |branch_k><branch_j|, so entry (k, j) is
// the complex conjugate of entry (j, k) and diagonal entries are real.
struct WignerKernelTable {
  int n_branches = 0;
  int nodes = 0;
  std::vector<std::vector<Complex>> h, v;
  int pair_index(int j, int k) const { return j * n_branches + k; }
};

inline WignerKernelTable build_wigner_kernel_table(
    const CoherentSuperposition& psi, const PhaseGrid& grid) {
  WignerKernelTable t;
  t.n_branches = static_cast<int>(psi.terms.size());
  t.nodes = grid.nodes_per_axis;
  const int g = t.nodes, g2 = g * g, k = t.n_branches;
  t.h.assign(static_cast<size_t>(k) * k, std::vector<Complex>(g2));
  t.v.assign(static_cast<size_t>(k) * k, std::vector<Complex>(g2));
  for (int j = 0; j < k; ++j)
    for (int kk = 0; kk < k; ++kk) {
      const int pi = t.pair_index(j, kk);
      const Complex ah = psi.terms[kk].amp_h, gh = psi.terms[j].amp_h;
      const Complex av = psi.terms[kk].amp_v, gv = psi.terms[j].amp_v;
      for (int iq = 0; iq < g; ++iq)
        for (int ip = 0; ip < g; ++ip) {
          const double q = grid.nodes[iq], p = grid.nodes[ip];
          t.h[pi][iq * g + ip] = cross_wigner_kernel(ah, gh, q, p);
          t.v[pi][iq * g + ip] = cross_wigner_kernel(av, gv, q, p);
        }
    }
  return t;
}

// Returns {integral of |W|, integral of W} over the grid. The 4D sum is
// factored through the per-mode tables: for each mode-1 point the K^2 mode-1
// kernel values are folded with the coefficients once, then swept against
// the mode-2 table. Summation is fixed-tree pairwise per row and across
// rows, so the result is bitwise reproducible for any worker count.
inline std::pair<double, double> nwf_integrals(const CoherentSuperposition& psi,
                                               const PhaseGrid& grid) {
  require_normalized(psi, "nwf_integrals");
  const WignerKernelTable table = build_wigner_kernel_table(psi, grid);
  const int k = table.n_branches, g = grid.nodes_per_axis, g2 = g * g;
  const int pairs = k * k;

  std::vector<double> w2(static_cast<size_t>(g2));
  for (int iq = 0; iq < g; ++iq)
    for (int ip = 0; ip < g; ++ip)
      w2[iq * g + ip] = grid.weights[iq] * grid.weights[ip];

  std::vector<Complex> coeff(static_cast<size_t>(pairs));
  for (int j = 0; j < k; ++j)
    for (int kk = 0; kk < k; ++kk)
      coeff[table.pair_index(j, kk)] =
          std::conj(psi.terms[j].coeff) * psi.terms[kk].coeff;

  std::vector<double> row_abs(static_cast<size_t>(g2));
  std::vector<double> row_raw(static_cast<size_t>(g2));
  parallel_for_index(g2, [&](int r) {
    thread_local std::vector<Complex> folded;
    thread_local std::vector<double> scratch_abs, scratch_raw;
    folded.resize(static_cast<size_t>(pairs));
    scratch_abs.resize(static_cast<size_t>(g2));
    scratch_raw.resize(static_cast<size_t>(g2));
    for (int pi = 0; pi < pairs; ++pi)
      folded[pi] = coeff[pi] * table.h[pi][r];
    for (int x = 0; x < g2; ++x) {
      double re = 0.0;
      for (int pi = 0; pi < pairs; ++pi) {
        const Complex& f = folded[pi];
        const Complex& kv = table.v[pi][x];
        re += f.real() * kv.real() - f.imag() * kv.imag();
      }
      const double wv = w2[x] * re;
      scratch_raw[x] = wv;
      scratch_abs[x] = std::abs(wv);
    }
    row_raw[r] = w2[r] * pairwise_sum(scratch_raw.data(), scratch_raw.size());
    row_abs[r] = w2[r] * pairwise_sum(scratch_abs.data(), scratch_abs.size());
  });
  return {pairwise_sum(row_abs.data(), row_abs.size()),
          pairwise_sum(row_raw.data(), row_raw.size())};
}

struct NwfResult {
  double delta = 0.0;          // integral of |W| minus 1
  double integral_w = 0.0;     // raw integral of W (should be ~1)
  double error_estimate = 0.0; // |delta(n) - delta(n/2)|
};

struct NwfPolicy {
  int nodes_per_axis = 96;
  double half_width = 0.0; // 0 = derive from the state
  GridRule rule = GridRule::gauss_legendre;
  double integral_tol = 1e-4;
};

inline NwfResult nwf(const CoherentSuperposition& psi, const PhaseGrid& grid,
                     double integral_tol = 1e-4) {
  require_normalized(psi, "nwf");
  check_grid_for_state(grid, psi, "nwf");
  const auto full = nwf_integrals(psi, grid);
  const int half_nodes = std::max(8, grid.nodes_per_axis / 2);
  const PhaseGrid half =
      make_phase_grid(grid.half_width, half_nodes, grid.rule);
  const auto coarse = nwf_integrals(psi, half);
  NwfResult res;
  res.integral_w = full.second;
  res.delta = full.first - 1.0;
  res.error_estimate = std::abs((full.first - 1.0) - (coarse.first - 1.0));
  if (std::abs(res.integral_w - 1.0) > integral_tol)
    throw GridTooSmall("nwf: integral of W is " +
                       std::to_string(res.integral_w) +
                       ", grid does not capture the state");
  return res;
}

// The grid is centered on the branch-amplitude centroid, so a common
// displacement translates the grid along with the state and delta is
// unchanged up to rounding. half_width therefore bounds the spread about
// the centroid, not about the origin.
inline NwfResult nwf(const CoherentSuperposition& psi,
                     const NwfPolicy& policy = {}) {
  Complex ch{0.0, 0.0}, cv{0.0, 0.0};
  for (const CoherentTerm& t : psi.terms) {
    ch += t.amp_h;
    cv += t.amp_v;
  }
  const double k = psi.terms.empty() ? 1.0
                                     : static_cast<double>(psi.terms.size());
  const CoherentSuperposition centered = displace(psi, -ch / k, -cv / k);
  const double hw = policy.half_width > 0.0
                        ? policy.half_width
                        : required_half_width(centered);
  return nwf(centered,
             make_phase_grid(hw, policy.nodes_per_axis, policy.rule),
             policy.integral_tol);
}

enum class PhaseAxis { q1, p1, q2, p2 };

inline const char* phase_axis_name(PhaseAxis a) {
  switch (a) {
    case PhaseAxis::q1: return "q1";
    case PhaseAxis::p1: return "p1";
    case PhaseAxis::q2: return "q2";
    default: return "p2";
  }
}

inline double& phase_axis_ref(PhasePoint4& pt, PhaseAxis a) {
  switch (a) {
    case PhaseAxis::q1: return pt.q1;
    case PhaseAxis::p1: return pt.p1;
    case PhaseAxis::q2: return pt.q2;
    default: return pt.p2;
  }
}

struct WignerSliceRow {
  double x = 0.0, y = 0.0, w = 0.0;
};

// W sampled on a uniform inclusive grid over a 2D coordinate plane, the
// remaining two coordinates held at `base`. Row-major in x, then y.
inline std::vector<WignerSliceRow> wigner_slice(
    const CoherentSuperposition& psi, PhaseAxis ax, PhaseAxis ay,
    PhasePoint4 base, double half_width, int nodes) {
  require_normalized(psi, "wigner_slice");
  if (ax == ay)
    throw ConfigError("wigner_slice: the two axes must differ");
  if (nodes < 2) throw ConfigError("wigner_slice: need at least 2 nodes");
  if (!(half_width > 0.0))
    throw ConfigError("wigner_slice: half_width must be positive");
  const double h = 2.0 * half_width / (nodes - 1);
  std::vector<WignerSliceRow> rows(static_cast<size_t>(nodes) * nodes);
  parallel_for_index(nodes * nodes, [&](int idx) {
    const int ix = idx / nodes, iy = idx % nodes;
    PhasePoint4 pt = base;
    const double x = -half_width + h * ix;
    const double y = -half_width + h * iy;
    phase_axis_ref(pt, ax) = x;
    phase_axis_ref(pt, ay) = y;
    rows[idx] = {x, y, wigner_point(psi, pt)};
  });
  return rows;
}

struct NwfSweepRow {
  double parameter = 0.0;
  double delta = 0.0;
  double error_estimate = 0.0;
  double integral_w = 0.0;
};

// One NWF evaluation per parameter value; the grid half-width follows each
// state unless the policy pins it.
template <class StateFn>
std::vector<NwfSweepRow> nwf_sweep(StateFn&& make_state,
                                   const std::vector<double>& params,
                                   const NwfPolicy& policy = {}) {
  std::vector<NwfSweepRow> rows;
  rows.reserve(params.size());
  for (double p : params) {
    const CoherentSuperposition st = make_state(p);
    const NwfResult r = nwf(st, policy);
    rows.push_back({p, r.delta, r.error_estimate, r.integral_w});
  }
  return rows;
}

} // namespace polwig

#endif
