#include "snl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace snl {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double pixel_lo = 0, pixel_hi = 1;

  double map(double v) const {
    double a = log ? std::log10(v) : v;
    double l = log ? std::log10(lo) : lo;
    double h = log ? std::log10(hi) : hi;
    return pixel_lo + (a - l) / (h - l) * (pixel_hi - pixel_lo);
  }
  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0); }
};

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  Axis ax{0, 1, false, kLeft, kWidth - kRight};
  Axis ay{0, 1, spec.log_y, kHeight - kBottom, kTop};

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto take_y = [&](double v) {
    if (!ay.usable(v)) return;
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  };
  for (const auto& s : spec.series) {
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !ay.usable(s.y[k])) continue;
      xmin = std::min(xmin, s.x[k]);
      xmax = std::max(xmax, s.x[k]);
      take_y(s.y[k]);
    }
    for (double v : s.band_low) take_y(v);
    for (double v : s.band_high) take_y(v);
  }
  if (spec.reference_y) take_y(*spec.reference_y);
  if (!(xmin <= xmax)) xmin = 0, xmax = 1;
  if (!(ymin <= ymax)) ymin = spec.log_y ? 0.1 : 0, ymax = 1;
  if (xmin == xmax) xmax = xmin + 1;
  if (ymin == ymax) {
    if (spec.log_y) ymin /= 2, ymax *= 2;
    else ymin -= 0.5, ymax += 0.5;
  }
  ax.lo = xmin, ax.hi = xmax;
  ay.lo = ymin, ay.hi = ymax;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";

  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  svg << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
      << y0 - y1 << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (int t = 0; t <= 5; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 5.0;
    const double px = ax.map(xv);
    svg << "<line x1=\"" << num(px) << "\" y1=\"" << y0 << "\" x2=\"" << num(px) << "\" y2=\""
        << y0 + 5 << "\" stroke=\"#333\"/>";
    svg << "<text x=\"" << num(px) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
        << tick(xv) << "</text>\n";
    const double yv = spec.log_y ? std::pow(10.0, std::log10(ymin) +
                                                      (std::log10(ymax) - std::log10(ymin)) * t / 5.0)
                                 : ymin + (ymax - ymin) * t / 5.0;
    const double py = ay.map(yv);
    svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << x1 << "\" y2=\""
        << num(py) << "\" stroke=\"#ddd\"/>";
    svg << "<text x=\"" << x0 - 8 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
        << tick(yv) << "</text>\n";
  }
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 18
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  svg << "<text transform=\"translate(20," << (y0 + y1) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  std::size_t index = 0;
  for (const auto& s : spec.series) {
    const char* color = kColors[index % (sizeof kColors / sizeof *kColors)];
    const std::size_t count = std::min(s.x.size(), s.y.size());
    if (s.band_low.size() == count && s.band_high.size() == count && count > 0) {
      std::ostringstream upper, lower;
      for (std::size_t k = 0; k < count; ++k)
        if (std::isfinite(s.x[k]) && ay.usable(s.band_high[k]))
          upper << num(ax.map(s.x[k])) << ',' << num(ay.map(s.band_high[k])) << ' ';
      for (std::size_t k = count; k-- > 0;)
        if (std::isfinite(s.x[k]) && ay.usable(s.band_low[k]))
          lower << num(ax.map(s.x[k])) << ',' << num(ay.map(s.band_low[k])) << ' ';
      svg << "<polygon points=\"" << upper.str() << lower.str() << "\" fill=\"" << color
          << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t k = 0; k < count; ++k)
      if (std::isfinite(s.x[k]) && ay.usable(s.y[k]))
        svg << num(ax.map(s.x[k])) << ',' << num(ay.map(s.y[k])) << ' ';
    svg << "\"/>\n";
    const double ly = kTop + 16 + 20.0 * static_cast<double>(index);
    svg << "<line x1=\"" << x1 + 12 << "\" y1=\"" << ly << "\" x2=\"" << x1 + 36 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    svg << "<text x=\"" << x1 + 42 << "\" y=\"" << ly + 4 << "\">" << escape(s.label)
        << "</text>\n";
    ++index;
  }
  if (spec.reference_y && ay.usable(*spec.reference_y)) {
    const double py = ay.map(*spec.reference_y);
    svg << "<line x1=\"" << x0 << "\" y1=\"" << num(py) << "\" x2=\"" << x1 << "\" y2=\""
        << num(py) << "\" stroke=\"#000\" stroke-dasharray=\"6,4\"/>";
    svg << "<text x=\"" << x1 + 12 << "\" y=\"" << num(py + 4) << "\">"
        << escape(spec.reference_label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace snl
