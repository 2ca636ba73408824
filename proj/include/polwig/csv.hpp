#ifndef POLWIG_CSV_HPP
#define POLWIG_CSV_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "polwig/errors.hpp"

namespace polwig {

// Shortest round-trippable decimal form.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Write-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::string& path,
                              const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("write_file_atomic: cannot open " + tmp.string());
    out << content;
    if (!out) throw Error("write_file_atomic: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

// '#'-prefixed comment lines, a header row, then numeric rows. No
// timestamps or machine identifiers, so repeated runs match byte for byte.
inline std::string render_csv(const std::vector<std::string>& comments,
                              const std::vector<std::string>& header,
                              const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw Error("render_csv: row width " + std::to_string(row.size()) +
                  " does not match header width " +
                  std::to_string(header.size()));
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::string& path,
                      const std::vector<std::string>& comments,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  write_file_atomic(path, render_csv(comments, header, rows));
}

} // namespace polwig

#endif
