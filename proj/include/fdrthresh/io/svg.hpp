#pragma once

#include <string>
#include <vector>

namespace fdrthresh::io {

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  /// Draw point markers instead of a polyline.
  bool points = false;
};

/// Vertical reference line with a label.
struct SvgMarker {
  double x = 0.0;
  std::string label;
};

/// Minimal line chart: axes with ticks, polylines, vertical markers and a legend.
/// Non-finite samples are skipped.
struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  std::vector<SvgMarker> markers;
  int width = 720;
  int height = 440;

  std::string render() const;
};

}  // namespace fdrthresh::io
