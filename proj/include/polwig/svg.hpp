#ifndef POLWIG_SVG_HPP
#define POLWIG_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "polwig/csv.hpp"
#include "polwig/errors.hpp"

namespace polwig {

struct SvgSeries {
  std::string label;
  std::string color; // e.g. "#1f6fb2"
  std::vector<double> x, y;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct AxisMap {
  double lo = 0.0, hi = 1.0, px0 = 0.0, px1 = 1.0;
  double operator()(double v) const {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

inline void expand_range(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.04 * (hi - lo);
  lo -= pad;
  hi += pad;
}

inline std::string axes_frame(const AxisMap& mx, const AxisMap& my,
                              const std::string& xlabel,
                              const std::string& ylabel) {
  std::string out;
  out += "<rect x='" + svg_num(mx.px0) + "' y='" + svg_num(my.px1) +
         "' width='" + svg_num(mx.px1 - mx.px0) + "' height='" +
         svg_num(my.px0 - my.px1) +
         "' fill='none' stroke='#444' stroke-width='1'/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = mx.lo + (mx.hi - mx.lo) * t / 4.0;
    const double fy = my.lo + (my.hi - my.lo) * t / 4.0;
    out += "<text x='" + svg_num(mx(fx)) + "' y='" + svg_num(my.px0 + 16) +
           "' font-size='10' text-anchor='middle'>" + svg_num(fx) +
           "</text>\n";
    out += "<text x='" + svg_num(mx.px0 - 6) + "' y='" + svg_num(my(fy) + 3) +
           "' font-size='10' text-anchor='end'>" + svg_num(fy) + "</text>\n";
  }
  out += "<text x='" + svg_num(0.5 * (mx.px0 + mx.px1)) + "' y='" +
         svg_num(my.px0 + 32) + "' font-size='12' text-anchor='middle'>" +
         xlabel + "</text>\n";
  out += "<text x='14' y='" + svg_num(0.5 * (my.px0 + my.px1)) +
         "' font-size='12' text-anchor='middle' transform='rotate(-90 14 " +
         svg_num(0.5 * (my.px0 + my.px1)) + ")'>" + ylabel + "</text>\n";
  return out;
}

} // namespace detail

inline std::string render_line_chart(const std::string& title,
                                     const std::string& xlabel,
                                     const std::string& ylabel,
                                     const std::vector<SvgSeries>& series) {
  using detail::svg_num;
  const double w = 640, h = 440;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const SvgSeries& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  if (!std::isfinite(xlo) || !std::isfinite(ylo))
    throw Error("render_line_chart: no data points");
  detail::expand_range(xlo, xhi);
  detail::expand_range(ylo, yhi);
  const detail::AxisMap mx{xlo, xhi, 58, w - 18};
  const detail::AxisMap my{ylo, yhi, h - 48, 34};

  std::string out = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    svg_num(w) + "' height='" + svg_num(h) + "'>\n";
  out += "<rect width='100%' height='100%' fill='white'/>\n";
  out += "<text x='" + svg_num(w / 2) +
         "' y='20' font-size='14' text-anchor='middle'>" + title +
         "</text>\n";
  out += detail::axes_frame(mx, my, xlabel, ylabel);
  double ly = 40;
  for (const SvgSeries& s : series) {
    std::string pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      pts += svg_num(mx(s.x[i])) + "," + svg_num(my(s.y[i]));
      if (i + 1 < s.x.size()) pts += " ";
    }
    out += "<polyline points='" + pts + "' fill='none' stroke='" + s.color +
           "' stroke-width='1.5'/>\n";
    out += "<text x='" + svg_num(w - 24) + "' y='" + svg_num(ly) +
           "' font-size='11' text-anchor='end' fill='" + s.color + "'>" +
           s.label + "</text>\n";
    ly += 14;
  }
  out += "</svg>\n";
  return out;
}

// Square heatmap with a symmetric diverging palette around zero: negative
// values blue, positive red.
inline std::string render_heatmap(const std::string& title,
                                  const std::string& xlabel,
                                  const std::string& ylabel,
                                  const std::vector<double>& xs,
                                  const std::vector<double>& ys,
                                  const std::vector<double>& values) {
  using detail::svg_num;
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  if (nx < 2 || ny < 2 ||
      values.size() != static_cast<size_t>(nx) * static_cast<size_t>(ny))
    throw Error("render_heatmap: grid size mismatch");
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) vmax = 1.0;
  const double w = 560, h = 560;
  const detail::AxisMap mx{xs.front(), xs.back(), 58, w - 18};
  const detail::AxisMap my{ys.front(), ys.back(), h - 48, 34};
  const double cw = (mx.px1 - mx.px0) / (nx - 1);
  const double ch = (my.px0 - my.px1) / (ny - 1);

  std::string out = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    svg_num(w) + "' height='" + svg_num(h) + "'>\n";
  out += "<rect width='100%' height='100%' fill='white'/>\n";
  out += "<text x='" + svg_num(w / 2) +
         "' y='20' font-size='14' text-anchor='middle'>" + title +
         "</text>\n";
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) {
      const double v = values[static_cast<size_t>(ix) * ny + iy] / vmax;
      const double t = std::clamp(v, -1.0, 1.0);
      const int r = static_cast<int>(t > 0 ? 255 : 255 * (1 + t));
      const int b = static_cast<int>(t < 0 ? 255 : 255 * (1 - t));
      const int g = static_cast<int>(255 * (1 - std::abs(t)));
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", r, g, b);
      out += "<rect x='" + svg_num(mx(xs[ix]) - cw / 2) + "' y='" +
             svg_num(my(ys[iy]) - ch / 2) + "' width='" + svg_num(cw + 0.5) +
             "' height='" + svg_num(ch + 0.5) + "' fill='" + color + "'/>\n";
    }
  out += detail::axes_frame(mx, my, xlabel, ylabel);
  out += "</svg>\n";
  return out;
}

inline void write_svg(const std::string& path, const std::string& content) {
  write_file_atomic(path, content);
}

} // namespace polwig

#endif
