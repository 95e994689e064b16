#include "egp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace egp::svg {

namespace {

constexpr double kWidth = 960, kHeight = 520;
constexpr double kLeft = 64, kRight = 24, kTop = 44, kBottom = 44;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(std::span<const double> vs) {
    for (double v : vs)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  }
  void finalize() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

struct Mapper {
  Range xr, yr;
  double px(double x) const { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void polyline(std::ostream& out, const Mapper& m, const Series& s, const char* color,
              double width) {
  if (s.x.empty()) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\" points=\"";
  for (std::size_t i = 0; i < s.x.size(); ++i)
    out << num(m.px(s.x[i])) << ',' << num(m.py(s.y[i])) << ' ';
  out << "\"/>\n";
}

void band(std::ostream& out, const Mapper& m, const Series& lower, const Series& upper) {
  if (lower.x.empty() || upper.x.size() != lower.x.size()) return;
  out << "<path fill=\"#9ecae8\" fill-opacity=\"0.45\" stroke=\"none\" d=\"M";
  for (std::size_t i = 0; i < upper.x.size(); ++i)
    out << ' ' << num(m.px(upper.x[i])) << ' ' << num(m.py(upper.y[i]));
  for (std::size_t i = lower.x.size(); i-- > 0;)
    out << " L " << num(m.px(lower.x[i])) << ' ' << num(m.py(lower.y[i]));
  out << " Z\"/>\n";
}

void axes(std::ostream& out, const Mapper& m, std::string_view title) {
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"#444\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = m.xr.lo + (m.xr.hi - m.xr.lo) * t / 4.0;
    const double fy = m.yr.lo + (m.yr.hi - m.yr.lo) * t / 4.0;
    out << "<text x=\"" << num(m.px(fx)) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx)
        << "</text>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(m.py(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
        << "</text>\n";
  }
}

void legend_entry(std::ostream& out, double x, double y, const char* color, const char* label) {
  out << "<rect x=\"" << x << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"12\" fill=\"" << color
      << "\"/>\n<text x=\"" << x + 18 << "\" y=\"" << y + 2
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
}

void open_svg(std::ostream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
}

}  // namespace

void write_forecast_plot(std::ostream& out, std::string_view title, const Series& actual,
                         const Series& mean, const Series& lower, const Series& upper) {
  Mapper m;
  m.xr.include(actual.x);
  m.xr.include(mean.x);
  m.yr.include(actual.y);
  m.yr.include(mean.y);
  m.yr.include(lower.y);
  m.yr.include(upper.y);
  m.xr.finalize();
  m.yr.finalize();

  open_svg(out);
  axes(out, m, title);
  band(out, m, lower, upper);
  polyline(out, m, mean, "#c23b3b", 1.8);
  for (std::size_t i = 0; i < actual.x.size(); ++i)
    out << "<circle cx=\"" << num(m.px(actual.x[i])) << "\" cy=\"" << num(m.py(actual.y[i]))
        << "\" r=\"2.2\" fill=\"#3a5f8a\"/>\n";
  legend_entry(out, kWidth - 220, kTop + 10, "#3a5f8a", "actual");
  legend_entry(out, kWidth - 220, kTop + 28, "#c23b3b", "posterior mean");
  legend_entry(out, kWidth - 220, kTop + 46, "#9ecae8", "&#177;2&#963; band");
  out << "</svg>\n";
}

void write_convergence_plot(std::ostream& out, std::string_view title,
                            std::span<const double> best_so_far) {
  Series line;
  for (std::size_t i = 0; i < best_so_far.size(); ++i)
    if (std::isfinite(best_so_far[i])) {
      line.x.push_back(static_cast<double>(i + 1));
      line.y.push_back(best_so_far[i]);
    }

  Mapper m;
  m.xr.include(line.x);
  m.yr.include(line.y);
  m.xr.finalize();
  m.yr.finalize();

  open_svg(out);
  axes(out, m, title);
  polyline(out, m, line, "#2e7d32", 1.8);
  for (std::size_t i = 0; i < line.x.size(); ++i)
    out << "<circle cx=\"" << num(m.px(line.x[i])) << "\" cy=\"" << num(m.py(line.y[i]))
        << "\" r=\"2.4\" fill=\"#2e7d32\"/>\n";
  legend_entry(out, kWidth - 220, kTop + 10, "#2e7d32", "best score so far");
  out << "</svg>\n";
}

}  // namespace egp::svg
