#pragma once

// Plain SVG plots: gap histograms with an optional density overlay, and
// (T, delta_T) scatters with dashed reference lines.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quasigap/gaps.hpp"

namespace quasigap::svg {

namespace detail {

struct Frame {
  double x0, x1, y0, y1;
  double W = 640, H = 400, ml = 60, mr = 20, mt = 20, mb = 40;

  double px(double x) const { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); }
  double py(double y) const { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); }
};

inline std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

inline void open(std::ostringstream& os, const Frame& f, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.W << "\" height=\"" << f.H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << f.ml << "\" y=\"14\" font-size=\"12\" font-family=\"sans-serif\">" << title << "</text>\n";
  // axes with end labels
  os << "<line x1=\"" << f.ml << "\" y1=\"" << f.py(f.y0) << "\" x2=\"" << f.W - f.mr << "\" y2=\"" << f.py(f.y0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << f.ml << "\" y1=\"" << f.py(f.y0) << "\" x2=\"" << f.ml << "\" y2=\"" << f.mt << "\" stroke=\"black\"/>\n";
  auto label = [&](double x, double y, const std::string& s, const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s
       << "</text>\n";
  };
  label(f.px(f.x0), f.H - f.mb + 14, num(f.x0), "middle");
  label(f.px(f.x1), f.H - f.mb + 14, num(f.x1), "middle");
  label(f.ml - 4, f.py(f.y0), num(f.y0), "end");
  label(f.ml - 4, f.py(f.y1) + 4, num(f.y1), "end");
}

inline void hline(std::ostringstream& os, const Frame& f, double y, const char* color) {
  os << "<line x1=\"" << f.px(f.x0) << "\" y1=\"" << f.py(y) << "\" x2=\"" << f.px(f.x1) << "\" y2=\"" << f.py(y) << "\" stroke=\"" << color
     << "\" stroke-dasharray=\"6,4\"/>\n";
}

}  // namespace detail

/// Bars of mass / bin_width (a density), plus the curve of `overlay` if given.
inline std::string histogram_svg(const Histogram& h, const std::string& title, const std::function<double(double)>& overlay = {}) {
  double ymax = 0;
  for (double m : h.mass) ymax = std::max(ymax, m / h.bin_width);
  const std::size_t samples = 600;
  std::vector<std::pair<double, double>> curve;
  if (overlay) {
    for (std::size_t i = 0; i <= samples; ++i) {
      const double x = h.lo + (h.hi - h.lo) * static_cast<double>(i) / samples;
      curve.emplace_back(x, overlay(x));
      ymax = std::max(ymax, curve.back().second);
    }
  }
  detail::Frame f{h.lo, h.hi, 0, ymax > 0 ? ymax * 1.05 : 1};
  std::ostringstream os;
  detail::open(os, f, title);
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    if (h.mass[i] <= 0) continue;
    const double x = h.bin_left(i), y = h.mass[i] / h.bin_width;
    os << "<rect x=\"" << f.px(x) << "\" y=\"" << f.py(y) << "\" width=\"" << f.px(x + h.bin_width) - f.px(x) << "\" height=\""
       << f.py(0) - f.py(y) << "\" fill=\"steelblue\"/>\n";
  }
  if (!curve.empty()) {
    os << "<polyline fill=\"none\" stroke=\"crimson\" points=\"";
    for (const auto& [x, y] : curve) os << f.px(x) << ',' << f.py(y) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Points (T, delta_T) with dashed horizontal lines at each reference value.
inline std::string scatter_svg(const std::vector<std::pair<double, double>>& pts, const std::vector<double>& refs, const std::string& title) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  for (double r : refs) {
    y0 = std::min(y0, r);
    y1 = std::max(y1, r);
  }
  if (pts.empty()) x0 = 0, x1 = 1;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  detail::Frame f{x0, x1, y0 - pad, y1 + pad};
  std::ostringstream os;
  detail::open(os, f, title);
  for (double r : refs) detail::hline(os, f, r, "gray");
  for (const auto& [x, y] : pts) os << "<circle cx=\"" << f.px(x) << "\" cy=\"" << f.py(y) << "\" r=\"1.8\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace quasigap::svg
