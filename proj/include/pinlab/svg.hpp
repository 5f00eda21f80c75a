#pragma once

#include <string>
#include <vector>

namespace pinlab {

struct SvgPlotSpec {
  std::vector<double> x, y;
  std::string x_label, y_label, title;
  bool log_x = false, log_y = false;
  std::string annotation;  // drawn inside the plot area, e.g. a fitted slope
};

/// Self-contained line/scatter SVG with axes and tick labels; no external
/// plotting dependency.
std::string render_svg(const SvgPlotSpec& spec);

}  // namespace pinlab
