#ifndef POLWIG_STATE_IO_HPP
#define POLWIG_STATE_IO_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polwig/csv.hpp"
#include "polwig/errors.hpp"
#include "polwig/states.hpp"

namespace polwig {

// Plain-text state interchange format:
//
//   polwig-state v1
//   normalized true
//   branch <coeff re> <coeff im> <h re> <h im> <v re> <v im>
//
// One branch line per term, '#' lines and blank lines ignored.

inline std::string render_state_file(const CoherentSuperposition& psi) {
  std::string out = "polwig-state v1\n";
  out += std::string("normalized ") + (psi.normalized ? "true" : "false") +
         "\n";
  for (const CoherentTerm& t : psi.terms) {
    out += "branch";
    for (double v : {t.coeff.real(), t.coeff.imag(), t.amp_h.real(),
                     t.amp_h.imag(), t.amp_v.real(), t.amp_v.imag()})
      out += " " + format_number(v);
    out += "\n";
  }
  return out;
}

inline void write_state_file(const std::string& path,
                             const CoherentSuperposition& psi) {
  write_file_atomic(path, render_state_file(psi));
}

namespace detail {
inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline double parse_field(const std::string& tok, int line_no,
                          const char* field) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ParseError("line " + std::to_string(line_no) + ": field '" + field +
                     "' is not a number: '" + tok + "'");
  return v;
}
} // namespace detail

inline CoherentSuperposition parse_state_text(const std::string& text) {
  static const char* kFieldNames[6] = {"coeff re", "coeff im", "h re",
                                       "h im",     "v re",     "v im"};
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int stage = 0; // 0 = want magic, 1 = want normalized, 2 = want branches
  CoherentSuperposition psi;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::vector<std::string> f = detail::split_fields(line);
    if (stage == 0) {
      if (f.size() != 2 || f[0] != "polwig-state" || f[1] != "v1")
        throw ParseError("line " + std::to_string(line_no) +
                         ": first line must be 'polwig-state v1'");
      stage = 1;
    } else if (stage == 1) {
      if (f.size() != 2 || f[0] != "normalized" ||
          (f[1] != "true" && f[1] != "false"))
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'normalized true' or 'normalized false'");
      psi.normalized = (f[1] == "true");
      stage = 2;
    } else {
      if (f[0] != "branch")
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'branch', got '" + f[0] + "'");
      if (f.size() != 7)
        throw ParseError("line " + std::to_string(line_no) +
                         ": branch needs 6 numeric fields "
                         "(coeff re, coeff im, h re, h im, v re, v im), got " +
                         std::to_string(f.size() - 1));
      double vals[6];
      for (int i = 0; i < 6; ++i)
        vals[i] = detail::parse_field(f[i + 1], line_no, kFieldNames[i]);
      psi.terms.push_back({{vals[0], vals[1]}, {vals[2], vals[3]},
                           {vals[4], vals[5]}});
    }
  }
  if (stage == 0) throw ParseError("missing 'polwig-state v1' header line");
  if (stage == 1) throw ParseError("missing 'normalized' line");
  if (psi.terms.empty()) throw ParseError("no branch lines");
  if (psi.normalized) {
    const double n2 = norm_squared(psi);
    if (std::abs(n2 - 1.0) > 1e-6)
      throw ParseError("file claims normalized but |psi|^2 is " +
                       format_number(n2));
  }
  return psi;
}

inline CoherentSuperposition read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

inline std::string state_summary(const CoherentSuperposition& psi) {
  std::string out;
  out += "branches " + std::to_string(psi.terms.size()) + "\n";
  out += std::string("normalized ") + (psi.normalized ? "true" : "false") +
         "\n";
  out += "norm_sq " + format_number(norm_squared(psi)) + "\n";
  out += "max_amp " + format_number(max_branch_amp(psi)) + "\n";
  for (size_t i = 0; i < psi.terms.size(); ++i) {
    const CoherentTerm& t = psi.terms[i];
    out += "branch " + std::to_string(i) + " coeff (" +
           format_number(t.coeff.real()) + ", " +
           format_number(t.coeff.imag()) + ") h (" +
           format_number(t.amp_h.real()) + ", " +
           format_number(t.amp_h.imag()) + ") v (" +
           format_number(t.amp_v.real()) + ", " +
           format_number(t.amp_v.imag()) + ")\n";
  }
  return out;
}

} // namespace polwig

#endif
