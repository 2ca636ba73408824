#ifndef POLWIG_FIGURES_HPP
#define POLWIG_FIGURES_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "polwig/crc.hpp"
#include "polwig/csv.hpp"
#include "polwig/errors.hpp"
#include "polwig/state_io.hpp"
#include "polwig/stokes.hpp"
#include "polwig/svg.hpp"
#include "polwig/wigner.hpp"

namespace polwig {

struct RunConfig {
  std::string out_dir = "out";
  std::string state_file;
  std::string family = "psi1";
  std::optional<Complex> alpha, beta;
  std::vector<double> theta_range;    // empty = per-figure default
  std::vector<double> phi1_list;      // empty = per-figure default
  std::vector<double> alpha_sq_range; // empty = per-figure default
  std::vector<double> alpha_abs_range;
  double phi2 = 0.0;
  double beta_sq = 2.0;             // |beta|^2 convention for the converter
  double alpha_minus_beta_sq = 4.0; // |alpha-beta|^2 convention, ditto
  int grid_nodes = 96;
  double half_width = 0.0; // 0 = derive from the state
  int n_max = 32;
  double tol = 1e-6;
  unsigned long long seed = 1;
  bool emit_plots = false;
};

inline void validate_run_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.grid_nodes < 8) throw ConfigError("grid-nodes must be at least 8");
  if (cfg.half_width < 0.0) throw ConfigError("half-width must be >= 0");
  if (cfg.n_max < 1) throw ConfigError("n-max must be at least 1");
  if (cfg.beta_sq < 0.0 || cfg.alpha_minus_beta_sq < 0.0)
    throw ConfigError("squared-modulus flags must be >= 0");
  const auto check_range = [](const std::vector<double>& r, const char* name) {
    for (size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1]))
        throw ConfigError(std::string(name) +
                          " must be strictly increasing");
  };
  check_range(cfg.theta_range, "theta-range");
  check_range(cfg.alpha_sq_range, "alpha-sq-range");
  check_range(cfg.alpha_abs_range, "alpha-abs-range");
}

inline std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw ConfigError("linspace: need at least one point");
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

// "start:stop:count" inclusive.
inline std::vector<double> parse_range(const std::string& text) {
  double a = 0.0, b = 0.0;
  int n = 0;
  char trail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &trail) != 3 ||
      n < 1)
    throw ConfigError("range must be start:stop:count, got '" + text + "'");
  if (n > 1 && !(b > a))
    throw ConfigError("range must be ordered (stop > start): '" + text + "'");
  return linspace(a, b, n);
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t next = text.find(',', pos);
    const std::string tok =
        text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("list entry is not a number: '" + tok + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

// "re,im" or plain "re".
inline Complex parse_complex(const std::string& text) {
  const std::vector<double> parts = parse_list(text);
  if (parts.size() == 1) return {parts[0], 0.0};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw ConfigError("complex value must be 're' or 're,im', got '" + text +
                    "'");
}

inline std::string default_out_dir() {
  if (const char* env = std::getenv("POLWIG_OUT_DIR"); env && *env)
    return env;
  return "out";
}

inline StateFamily parse_family(const std::string& name) {
  if (name == "psi1") return StateFamily::psi1;
  if (name == "psi2") return StateFamily::psi2;
  if (name == "psi3") return StateFamily::psi3;
  throw ConfigError("family must be psi1, psi2, or psi3, got '" + name + "'");
}

namespace detail {

inline std::string join_path(const std::string& dir, const char* name) {
  if (dir.empty()) return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

inline std::string complex_comment(const char* label, Complex v) {
  return std::string(label) + " = " + format_number(v.real()) + "," +
         format_number(v.imag());
}

inline std::string range_comment(const char* label,
                                 const std::vector<double>& r) {
  return std::string(label) + " = " + format_number(r.front()) + ":" +
         format_number(r.back()) + ":" + std::to_string(r.size());
}

} // namespace detail

// Stokes variances of psi1 vs |alpha|^2 at fixed beta.
inline std::vector<std::string> fig_var(const RunConfig& cfg) {
  const StateFamily family = parse_family(cfg.family);
  const Complex beta = cfg.beta.value_or(Complex{2.0, 0.0});
  const std::vector<double> range =
      cfg.alpha_sq_range.empty() ? linspace(0.0, 9.0, 91)
                                 : cfg.alpha_sq_range;
  const auto rows = variance_sweep(family, beta, range);
  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const VarianceRow& r : rows)
    table.push_back({r.alpha_sq, r.v1, r.v2, r.v3});
  const std::string csv_path = detail::join_path(cfg.out_dir, "var.csv");
  write_csv(csv_path,
            {"figure var: Stokes variances vs |alpha|^2",
             "family = " + cfg.family, detail::complex_comment("beta", beta),
             detail::range_comment("alpha_sq", range)},
            {"alpha_sq", "v1", "v2", "v3"}, table);
  std::vector<std::string> paths{csv_path};
  if (cfg.emit_plots) {
    std::vector<SvgSeries> series(3);
    const char* labels[3] = {"V1", "V2", "V3"};
    const char* colors[3] = {"#1f6fb2", "#c23b22", "#2e8b57"};
    for (int k = 0; k < 3; ++k) {
      series[k].label = labels[k];
      series[k].color = colors[k];
      for (const VarianceRow& r : rows) {
        series[k].x.push_back(r.alpha_sq);
        series[k].y.push_back(k == 0 ? r.v1 : k == 1 ? r.v2 : r.v3);
      }
    }
    const std::string svg_path = detail::join_path(cfg.out_dir, "var.svg");
    write_svg(svg_path, render_line_chart("Stokes variances", "|alpha|^2",
                                          "variance", series));
    paths.push_back(svg_path);
  }
  return paths;
}

// Degree of polarization vs |alpha|^2 for axis and diagonal coherent states.
inline std::vector<std::string> fig_pola1(const RunConfig& cfg) {
  const std::vector<double> range =
      cfg.alpha_sq_range.empty() ? linspace(0.0, 9.0, 91)
                                 : cfg.alpha_sq_range;
  const SphereQuadrature quad = make_sphere_quadrature(128, 128);
  const auto rows = polarization_sweep(range, quad, cfg.tol);
  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const PolarizationRow& r : rows)
    table.push_back({r.alpha_sq, r.p_horizontal_vertical, r.p_diagonal});
  const std::string csv_path = detail::join_path(cfg.out_dir, "pola1.csv");
  write_csv(csv_path,
            {"figure pola1: degree of polarization vs |alpha|^2",
             "sphere quadrature = 128x128 (Gauss-Legendre in cos theta)",
             "tol = " + format_number(cfg.tol),
             detail::range_comment("alpha_sq", range)},
            {"alpha_sq", "p_horizontal_vertical", "p_diagonal"}, table);
  std::vector<std::string> paths{csv_path};
  if (cfg.emit_plots) {
    SvgSeries axis{"|alpha,0>", "#1f6fb2", {}, {}};
    SvgSeries diag{"|alpha,alpha>", "#c23b22", {}, {}};
    for (const PolarizationRow& r : rows) {
      axis.x.push_back(r.alpha_sq);
      axis.y.push_back(r.p_horizontal_vertical);
      diag.x.push_back(r.alpha_sq);
      diag.y.push_back(r.p_diagonal);
    }
    const std::string svg_path = detail::join_path(cfg.out_dir, "pola1.svg");
    write_svg(svg_path, render_line_chart("Degree of polarization",
                                          "|alpha|^2", "P", {axis, diag}));
    paths.push_back(svg_path);
  }
  return paths;
}

namespace detail {
inline CoherentSuperposition figure_state(const RunConfig& cfg,
                                          Complex default_alpha,
                                          Complex default_beta) {
  if (!cfg.state_file.empty()) {
    CoherentSuperposition psi = read_state_file(cfg.state_file);
    return psi.normalized ? psi : normalize(psi);
  }
  const Complex a = cfg.alpha.value_or(default_alpha);
  const Complex b = cfg.beta.value_or(default_beta);
  switch (parse_family(cfg.family)) {
    case StateFamily::psi1: return make_psi1(a, b);
    case StateFamily::psi2: return make_psi2(a);
    default: return make_psi3(a);
  }
}
} // namespace detail

// Wigner slice over the (q1, p1) plane at q2 = p2 = 0.
inline std::vector<std::string> fig_wigner1(const RunConfig& cfg) {
  const CoherentSuperposition psi =
      detail::figure_state(cfg, {1.0, 0.0}, {-1.0, 0.0});
  const double hw = cfg.half_width > 0.0 ? cfg.half_width : 4.5;
  const int nodes = cfg.grid_nodes;
  const auto rows =
      wigner_slice(psi, PhaseAxis::q1, PhaseAxis::p1, {}, hw, nodes);
  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const WignerSliceRow& r : rows) table.push_back({r.x, r.y, r.w});
  const std::string csv_path = detail::join_path(cfg.out_dir, "wigner1.csv");
  write_csv(csv_path,
            {"figure wigner1: Wigner function on the (q1, p1) plane",
             "fixed q2 = 0, p2 = 0",
             "half_width = " + format_number(hw),
             "nodes_per_axis = " + std::to_string(nodes),
             "branches = " + std::to_string(psi.terms.size())},
            {"q1", "p1", "w"}, table);
  std::vector<std::string> paths{csv_path};
  if (cfg.emit_plots) {
    std::vector<double> xs(nodes), ys(nodes), vals(rows.size());
    for (int i = 0; i < nodes; ++i) {
      xs[i] = rows[static_cast<size_t>(i) * nodes].x;
      ys[i] = rows[i].y;
    }
    for (size_t i = 0; i < rows.size(); ++i) vals[i] = rows[i].w;
    const std::string svg_path =
        detail::join_path(cfg.out_dir, "wigner1.svg");
    write_svg(svg_path, render_heatmap("Wigner function", "q1", "p1", xs, ys,
                                       vals));
    paths.push_back(svg_path);
  }
  return paths;
}

// NWF of psi1(alpha, beta) vs |alpha| at fixed beta.
inline std::vector<std::string> fig_negplott(const RunConfig& cfg) {
  const Complex beta = cfg.beta.value_or(Complex{2.0, 0.0});
  const std::vector<double> range =
      cfg.alpha_abs_range.empty() ? linspace(0.0, 3.0, 31)
                                  : cfg.alpha_abs_range;
  NwfPolicy policy;
  policy.nodes_per_axis = cfg.grid_nodes;
  policy.half_width = cfg.half_width;
  const auto rows = nwf_sweep(
      [&beta](double a) { return make_psi1(Complex{a, 0.0}, beta); }, range,
      policy);
  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const NwfSweepRow& r : rows)
    table.push_back({r.parameter, r.delta, r.error_estimate, r.integral_w});
  const std::string csv_path = detail::join_path(cfg.out_dir, "negplott.csv");
  write_csv(csv_path,
            {"figure negplott: negativity volume of psi1(alpha, beta) vs "
             "|alpha|",
             detail::complex_comment("beta", beta),
             "nodes_per_axis = " + std::to_string(policy.nodes_per_axis),
             "half_width = " + (cfg.half_width > 0.0
                                    ? format_number(cfg.half_width)
                                    : std::string("auto")),
             detail::range_comment("alpha_abs", range)},
            {"alpha_abs", "nwf", "nwf_error_estimate", "integral_w"}, table);
  std::vector<std::string> paths{csv_path};
  if (cfg.emit_plots) {
    SvgSeries s{"NWF", "#1f6fb2", {}, {}};
    for (const NwfSweepRow& r : rows) {
      s.x.push_back(r.parameter);
      s.y.push_back(r.delta);
    }
    const std::string svg_path =
        detail::join_path(cfg.out_dir, "negplott.svg");
    write_svg(svg_path,
              render_line_chart("Negativity volume", "|alpha|", "NWF", {s}));
    paths.push_back(svg_path);
  }
  return paths;
}

// Concurrence of psi1(alpha, beta) over the (|alpha|, |beta|) grid.
inline std::vector<std::string> fig_concplot(const RunConfig& cfg) {
  const std::vector<double> range =
      cfg.alpha_abs_range.empty() ? linspace(0.0, 3.0, 31)
                                  : cfg.alpha_abs_range;
  std::vector<std::vector<double>> table;
  table.reserve(range.size() * range.size());
  for (double a : range)
    for (double b : range)
      table.push_back(
          {a, b, concurrence(make_psi1(Complex{a, 0.0}, Complex{b, 0.0}))});
  const std::string csv_path = detail::join_path(cfg.out_dir, "concplot.csv");
  write_csv(csv_path,
            {"figure concplot: concurrence of psi1(alpha, beta)",
             detail::range_comment("alpha_abs", range),
             detail::range_comment("beta_abs", range)},
            {"alpha_abs", "beta_abs", "concurrence"}, table);
  std::vector<std::string> paths{csv_path};
  if (cfg.emit_plots) {
    std::vector<double> vals;
    vals.reserve(table.size());
    for (const auto& row : table) vals.push_back(row[2]);
    const std::string svg_path =
        detail::join_path(cfg.out_dir, "concplot.svg");
    write_svg(svg_path, render_heatmap("Concurrence", "|alpha|", "|beta|",
                                       range, range, vals));
    paths.push_back(svg_path);
  }
  return paths;
}

namespace detail {
// Converter sweep shared by outfig_c and outfig_nwf.
inline std::vector<CrcRow> outfig_rows(const RunConfig& cfg,
                                       CoherentSuperposition* state_out) {
  Complex beta, alpha;
  if (cfg.beta) beta = *cfg.beta;
  else beta = {std::sqrt(cfg.beta_sq), 0.0};
  if (cfg.alpha) alpha = *cfg.alpha;
  else alpha = beta + Complex{std::sqrt(cfg.alpha_minus_beta_sq), 0.0};
  const CoherentSuperposition psi = make_psi1(alpha, beta);
  if (state_out) *state_out = psi;
  const std::vector<double> thetas =
      cfg.theta_range.empty() ? linspace(0.0, M_PI / 2.0, 33)
                              : cfg.theta_range;
  const std::vector<double> phi1 =
      cfg.phi1_list.empty()
          ? std::vector<double>{0.0, M_PI / 8.0, M_PI / 6.0, M_PI / 4.0}
          : cfg.phi1_list;
  NwfPolicy policy;
  policy.nodes_per_axis = cfg.grid_nodes;
  policy.half_width = cfg.half_width;
  return crc_sweep(psi, thetas, phi1, cfg.phi2, policy);
}

inline std::vector<std::string> write_outfig(
    const RunConfig& cfg, const char* stem, const char* ylabel,
    double CrcRow::*field) {
  CoherentSuperposition psi;
  const std::vector<CrcRow> rows = outfig_rows(cfg, &psi);
  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  for (const CrcRow& r : rows)
    table.push_back({r.theta, r.phi1, r.phi2, r.concurrence_value,
                     r.nwf_delta, r.nwf_error});
  const std::string csv_path =
      detail::join_path(cfg.out_dir, (std::string(stem) + ".csv").c_str());
  write_csv(csv_path,
            {std::string("figure ") + stem +
                 ": converter sweep (input compensator phi2, rotator theta, "
                 "output compensator phi1)",
             complex_comment("alpha", psi.terms[0].amp_h),
             complex_comment("beta", psi.terms[0].amp_v),
             "phi2 = " + format_number(cfg.phi2),
             "nodes_per_axis = " + std::to_string(cfg.grid_nodes),
             "half_width = " + (cfg.half_width > 0.0
                                    ? format_number(cfg.half_width)
                                    : std::string("auto"))},
            {"theta_rad", "phi1_rad", "phi2_rad", "concurrence", "nwf",
             "nwf_error_estimate"},
            table);
  std::vector<std::string> paths{csv_path};
  if (cfg.emit_plots) {
    const char* colors[] = {"#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2",
                            "#b8860b", "#555555"};
    std::vector<SvgSeries> series;
    size_t i = 0;
    while (i < rows.size()) {
      SvgSeries s;
      s.label = "phi1 = " + detail::svg_num(rows[i].phi1);
      s.color = colors[series.size() % 6];
      const double phi1 = rows[i].phi1;
      for (; i < rows.size() && rows[i].phi1 == phi1; ++i) {
        s.x.push_back(rows[i].theta);
        s.y.push_back(rows[i].*field);
      }
      series.push_back(std::move(s));
    }
    const std::string svg_path =
        detail::join_path(cfg.out_dir, (std::string(stem) + ".svg").c_str());
    write_svg(svg_path, render_line_chart("Converter sweep", "theta (rad)",
                                          ylabel, series));
    paths.push_back(svg_path);
  }
  return paths;
}
} // namespace detail

inline std::vector<std::string> fig_outfig_c(const RunConfig& cfg) {
  return detail::write_outfig(cfg, "outfig_c", "concurrence",
                              &CrcRow::concurrence_value);
}

inline std::vector<std::string> fig_outfig_nwf(const RunConfig& cfg) {
  return detail::write_outfig(cfg, "outfig_nwf", "NWF", &CrcRow::nwf_delta);
}

inline std::vector<std::string> run_figure(const std::string& id,
                                           const RunConfig& cfg) {
  validate_run_config(cfg);
  if (id == "var") return fig_var(cfg);
  if (id == "pola1") return fig_pola1(cfg);
  if (id == "wigner1") return fig_wigner1(cfg);
  if (id == "negplott") return fig_negplott(cfg);
  if (id == "concplot") return fig_concplot(cfg);
  if (id == "outfig_c") return fig_outfig_c(cfg);
  if (id == "outfig_nwf") return fig_outfig_nwf(cfg);
  throw ConfigError("unknown figure id '" + id +
                    "' (expected var, pola1, wigner1, negplott, concplot, "
                    "outfig_c, outfig_nwf)");
}

} // namespace polwig

#endif
