#pragma once

#include <optional>
#include <string>
#include <vector>

namespace snl {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional shaded band (e.g. the interquartile range).
  std::vector<double> band_low;
  std::vector<double> band_high;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<PlotSeries> series;
  std::optional<double> reference_y;
  std::string reference_label;
};

// Standalone SVG document. Non-finite points are skipped.
std::string render_svg(const PlotSpec& spec);

}  // namespace snl
