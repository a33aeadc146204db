#pragma once

#include <string>
#include <utility>
#include <vector>

namespace techlev {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool lines = false; // polyline instead of dots
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool x_log = false;
  bool y_log = false;
  std::vector<Series> series;
};

// self-contained SVG; points incompatible with a log axis are dropped.
// a generation timestamp comment is emitted unless deterministic is set.
std::string render_chart_svg(const ChartSpec& spec, bool deterministic);

} // namespace techlev
