#include "techlev/svg.hpp"

#include "techlev/errors.hpp"
#include "techlev/timeutil.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace techlev {

namespace {

constexpr double kWidth = 860, kHeight = 520;
constexpr double kLeft = 72, kRight = 24, kTop = 48, kBottom = 56;
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double to_unit(double v) const {
    if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    return (v - lo) / (hi - lo);
  }
};

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  const double first = std::ceil(lo / step) * step;
  for (double t = first; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  const int e0 = static_cast<int>(std::floor(std::log10(lo)));
  const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
  for (int e = e0; e <= e1; ++e) {
    const double t = std::pow(10.0, e);
    if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
  }
  if (ticks.empty()) ticks = {lo, hi};
  return ticks;
}

} // namespace

std::string render_chart_svg(const ChartSpec& spec, bool deterministic) {
  // collect plottable points
  std::vector<std::vector<std::pair<double, double>>> usable(spec.series.size());
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    for (const auto& [x, y] : spec.series[s].points) {
      if ((spec.x_log && x <= 0) || (spec.y_log && y <= 0)) continue;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
      usable[s].emplace_back(x, y);
    }
  }
  if (!any) throw DataError("no plottable points for chart \"" + spec.title + "\"");

  auto pad = [](double lo, double hi, bool log) {
    if (log) return std::pair<double, double>{lo / 1.5, hi * 1.5};
    double span = hi - lo;
    if (span <= 0) span = std::fabs(hi) > 0 ? std::fabs(hi) : 1.0;
    return std::pair<double, double>{lo - 0.05 * span, hi + 0.05 * span};
  };
  Axis xa{0, 1, spec.x_log}, ya{0, 1, spec.y_log};
  std::tie(xa.lo, xa.hi) = pad(xmin, xmax, spec.x_log);
  std::tie(ya.lo, ya.hi) = pad(ymin, ymax, spec.y_log);
  if (!spec.y_log && ymin >= 0 && ya.lo < 0) ya.lo = 0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + xa.to_unit(v) * plot_w; };
  auto py = [&](double v) { return kTop + (1.0 - ya.to_unit(v)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  if (!deterministic) {
    const auto now = std::chrono::floor<std::chrono::seconds>(
        std::chrono::system_clock::now());
    svg << "<!-- generated " << format_utc(now) << " -->\n";
  }
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\" fill=\"#222\">"
      << escape_xml(spec.title) << "</text>\n";

  // frame
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

  const auto xticks = spec.x_log ? log_ticks(xa.lo, xa.hi) : linear_ticks(xa.lo, xa.hi);
  for (double t : xticks) {
    const double x = px(t);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << fmt(x) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << kTop << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#eee\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#333\">"
        << fmt_tick(t) << "</text>\n";
  }
  const auto yticks = spec.y_log ? log_ticks(ya.lo, ya.hi) : linear_ticks(ya.lo, ya.hi);
  for (double t : yticks) {
    const double y = py(t);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(y) << "\" stroke=\"#333\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(y) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << fmt(y) << "\" stroke=\"#eee\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#333\">"
        << fmt_tick(t) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#222\">"
      << escape_xml(spec.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#222\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << escape_xml(spec.y_label) << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    const auto& pts = usable[s];
    if (pts.empty()) continue;
    if (spec.series[s].lines) {
      svg << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" d=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i ? "L" : "M") << fmt(px(pts[i].first)) << "," << fmt(py(pts[i].second));
      }
      svg << "\"/>\n";
    } else {
      for (const auto& [x, y] : pts) {
        svg << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
            << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
  }

  // legend
  double ly = kTop + 10;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    if (spec.series[s].label.empty()) continue;
    const char* color = kPalette[s % std::size(kPalette)];
    const double lx = kLeft + plot_w - 180;
    svg << "<rect x=\"" << lx << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"12\" "
        << "fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">"
        << escape_xml(spec.series[s].label) << "</text>\n";
    ly += 18;
  }

  svg << "</svg>\n";
  return svg.str();
}

} // namespace techlev
