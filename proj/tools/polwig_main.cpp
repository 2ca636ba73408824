#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "polwig/figures.hpp"
#include "polwig/state_io.hpp"
#include "polwig/stokes.hpp"
#include "polwig/validate.hpp"

namespace {

using namespace polwig;

struct FigureArgs {
  std::string id, state_file, family = "psi1";
  std::string alpha, beta, theta_range, phi1_list, alpha_sq_range,
      alpha_abs_range;
  std::string out_dir;
  double phi2 = 0.0, half_width = 0.0, tol = 1e-6;
  double beta_sq = 2.0, alpha_minus_beta_sq = 4.0;
  int grid_nodes = 96, n_max = 32;
  unsigned long long seed = 1;
  bool emit_plots = false;
};

int cmd_figure(const FigureArgs& a) {
  RunConfig cfg;
  cfg.out_dir = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  cfg.state_file = a.state_file;
  cfg.family = a.family;
  if (!a.alpha.empty()) cfg.alpha = parse_complex(a.alpha);
  if (!a.beta.empty()) cfg.beta = parse_complex(a.beta);
  if (!a.theta_range.empty()) cfg.theta_range = parse_range(a.theta_range);
  if (!a.phi1_list.empty()) cfg.phi1_list = parse_list(a.phi1_list);
  if (!a.alpha_sq_range.empty())
    cfg.alpha_sq_range = parse_range(a.alpha_sq_range);
  if (!a.alpha_abs_range.empty())
    cfg.alpha_abs_range = parse_range(a.alpha_abs_range);
  cfg.phi2 = a.phi2;
  cfg.beta_sq = a.beta_sq;
  cfg.alpha_minus_beta_sq = a.alpha_minus_beta_sq;
  cfg.grid_nodes = a.grid_nodes;
  cfg.half_width = a.half_width;
  cfg.n_max = a.n_max;
  cfg.tol = a.tol;
  cfg.seed = a.seed;
  cfg.emit_plots = a.emit_plots;
  for (const std::string& path : run_figure(a.id, cfg))
    std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_validate(int n_max, unsigned long long seed,
                 const std::string& out_dir_flag) {
  const ValidationReport rep = run_validation(n_max, seed);
  const std::string text = rep.render();
  std::fputs(text.c_str(), stdout);
  const std::string dir =
      out_dir_flag.empty() ? default_out_dir() : out_dir_flag;
  const std::string path = detail::join_path(dir, "validate_report.txt");
  write_file_atomic(path, text);
  std::printf("wrote %s\n", path.c_str());
  return rep.exit_code();
}

int cmd_inspect(const std::string& path) {
  const CoherentSuperposition psi = read_state_file(path);
  std::fputs(state_summary(psi).c_str(), stdout);
  const CoherentSuperposition unit = psi.normalized ? psi : normalize(psi);
  const StokesStats st = stokes_stats(unit);
  const char* names[4] = {"S0", "S1", "S2", "S3"};
  for (int k = 0; k < 4; ++k)
    std::printf("mean_%s %s\n", names[k], format_number(st.mean[k]).c_str());
  return 0;
}

int cmd_convert(const std::string& in_path, const std::string& family,
                const std::string& alpha, const std::string& beta,
                const std::string& out_path) {
  CoherentSuperposition psi;
  if (!in_path.empty()) {
    psi = read_state_file(in_path);
  } else {
    const Complex a = alpha.empty() ? Complex{1.0, 0.0} : parse_complex(alpha);
    const Complex b = beta.empty() ? Complex{-1.0, 0.0} : parse_complex(beta);
    switch (parse_family(family)) {
      case StateFamily::psi1: psi = make_psi1(a, b); break;
      case StateFamily::psi2: psi = make_psi2(a); break;
      default: psi = make_psi3(a); break;
    }
  }
  if (out_path.empty()) {
    std::fputs(render_state_file(psi).c_str(), stdout);
  } else {
    write_state_file(out_path, psi);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarization statistics of two-mode coherent superpositions"};
  app.require_subcommand(1);

  FigureArgs fa;
  CLI::App* fig = app.add_subcommand(
      "figure", "compute a figure dataset (CSV, optionally SVG)");
  fig->add_option("id", fa.id,
                  "var, pola1, wigner1, negplott, concplot, outfig_c, "
                  "outfig_nwf")
      ->required();
  fig->add_option("--state", fa.state_file, "state interchange file");
  fig->add_option("--family", fa.family, "psi1, psi2, or psi3");
  fig->add_option("--alpha", fa.alpha, "complex as re,im");
  fig->add_option("--beta", fa.beta, "complex as re,im");
  fig->add_option("--theta-range", fa.theta_range,
                  "rotator angles, start:stop:count");
  fig->add_option("--phi1-list", fa.phi1_list,
                  "output compensator phases, comma separated");
  fig->add_option("--phi2", fa.phi2, "input compensator phase");
  fig->add_option("--alpha-sq-range", fa.alpha_sq_range,
                  "|alpha|^2 sweep, start:stop:count");
  fig->add_option("--alpha-abs-range", fa.alpha_abs_range,
                  "|alpha| sweep, start:stop:count");
  fig->add_option("--beta-sq", fa.beta_sq, "|beta|^2 for the converter state");
  fig->add_option("--alpha-minus-beta-sq", fa.alpha_minus_beta_sq,
                  "|alpha-beta|^2 for the converter state");
  fig->add_option("--grid-nodes", fa.grid_nodes, "phase-space nodes per axis");
  fig->add_option("--half-width", fa.half_width,
                  "phase-space half width (0 = derive from the state)");
  fig->add_option("--n-max", fa.n_max, "photon-number cutoff for oracles");
  fig->add_option("--tol", fa.tol, "refinement tolerance");
  fig->add_option("--out-dir", fa.out_dir,
                  "output directory (default: POLWIG_OUT_DIR or ./out)");
  fig->add_option("--seed", fa.seed, "random seed");
  fig->add_flag("--emit-plots", fa.emit_plots, "also write SVG plots");

  int v_n_max = 48;
  unsigned long long v_seed = 1;
  std::string v_out;
  CLI::App* val = app.add_subcommand(
      "validate", "run oracle cross-checks and printed-form audits");
  val->add_option("--n-max", v_n_max, "photon-number cutoff (>= 32)");
  val->add_option("--seed", v_seed, "random seed");
  val->add_option("--out-dir", v_out,
                  "where the report copy goes (default: POLWIG_OUT_DIR or "
                  "./out)");

  CLI::App* st = app.add_subcommand(
      "state", "inspect or convert state interchange files");
  st->require_subcommand(1);
  std::string insp_path;
  CLI::App* insp = st->add_subcommand(
      "inspect", "print branch table, norm, and Stokes means");
  insp->add_option("path", insp_path, "state interchange file")->required();
  std::string conv_in, conv_family = "psi1", conv_alpha, conv_beta, conv_out;
  CLI::App* conv = st->add_subcommand(
      "convert",
      "write a state file from another file or from an inline family spec");
  conv->add_option("path", conv_in, "input state file (omit to use --family)");
  conv->add_option("--family", conv_family, "psi1, psi2, or psi3");
  conv->add_option("--alpha", conv_alpha, "complex as re,im");
  conv->add_option("--beta", conv_beta, "complex as re,im");
  conv->add_option("--out", conv_out, "output path (omit to print)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fig->parsed()) return cmd_figure(fa);
    if (val->parsed()) return cmd_validate(v_n_max, v_seed, v_out);
    if (insp->parsed()) return cmd_inspect(insp_path);
    if (conv->parsed())
      return cmd_convert(conv_in, conv_family, conv_alpha, conv_beta,
                         conv_out);
  } catch (const polwig::GridTooSmall& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const polwig::QuadratureTooCoarse& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const polwig::TruncationTooSevere& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const polwig::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
