#include "fdrthresh/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fdrthresh::io {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double pad = std::max(1e-12, std::abs(hi) * 0.05 + 0.5);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string SvgPlot::render() const {
  const double left = 70, right = 170, top = 40, bottom = 55;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  Range xr, yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xr.add(s.x[i]);
        yr.add(s.y[i]);
      }
    }
  }
  for (const auto& m : markers) xr.add(m.x);
  xr.finish();
  yr.finish();

  const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) { return top + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(plot_w)
     << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    os << "<line x1=\"" << fmt(px(xv)) << "\" y1=\"" << fmt(top + plot_h) << "\" x2=\"" << fmt(px(xv))
       << "\" y2=\"" << fmt(top + plot_h + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(top + plot_h + 18)
       << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    os << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(py(yv)) << "\" x2=\"" << fmt(left)
       << "\" y2=\"" << fmt(py(yv)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py(yv) + 4) << "\" text-anchor=\"end\">"
       << tick_label(yv) << "</text>\n";
  }
  os << "<text x=\"" << fmt(left + plot_w / 2) << "\" y=\"" << fmt(height - 12.0)
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << fmt(top + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(y_label) << "</text>\n";

  for (const auto& m : markers) {
    if (!std::isfinite(m.x)) continue;
    os << "<line x1=\"" << fmt(px(m.x)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(m.x))
       << "\" y2=\"" << fmt(top + plot_h) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << fmt(px(m.x) + 3) << "\" y=\"" << fmt(top + 12) << "\" fill=\"gray\">"
       << escape(m.label) << "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& line = series[s];
    const char* colour = kPalette[s % std::size(kPalette)];
    std::ostringstream pts;
    for (std::size_t i = 0; i < std::min(line.x.size(), line.y.size()); ++i) {
      if (!std::isfinite(line.x[i]) || !std::isfinite(line.y[i])) continue;
      if (line.points) {
        os << "<circle cx=\"" << fmt(px(line.x[i])) << "\" cy=\"" << fmt(py(line.y[i]))
           << "\" r=\"3.5\" fill=\"" << colour << "\"/>\n";
      } else {
        pts << fmt(px(line.x[i])) << "," << fmt(py(line.y[i])) << " ";
      }
    }
    if (!line.points) {
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.8\" points=\""
         << pts.str() << "\"/>\n";
    }
    const double ly = top + 14 + 18.0 * static_cast<double>(s);
    os << "<line x1=\"" << fmt(left + plot_w + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
       << fmt(left + plot_w + 32) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << colour
       << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << fmt(left + plot_w + 38) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(line.name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fdrthresh::io
