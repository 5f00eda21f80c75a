#include "pinlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pinlab {

namespace {

constexpr double kWidth = 640, kHeight = 440;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const SvgPlotSpec& spec) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < spec.x.size() && i < spec.y.size(); ++i) {
    double x = spec.x[i], y = spec.y[i];
    if (spec.log_x) {
      if (!(x > 0)) continue;
      x = std::log10(x);
    }
    if (spec.log_y) {
      if (!(y > 0)) continue;
      y = std::log10(y);
    }
    if (std::isfinite(x) && std::isfinite(y)) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";

  if (xs.size() >= 2) {
    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = *std::min_element(ys.begin(), ys.end());
    double ymax = *std::max_element(ys.begin(), ys.end());
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kHeight - kBottom - (y - ymin) / (ymax - ymin) * ph; };

    // axes
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\"/>\n<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\""
        << kLeft << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

    // ticks
    for (int i = 0; i <= 4; ++i) {
      const double tx = xmin + (xmax - xmin) * i / 4.0;
      const double ty = ymin + (ymax - ymin) * i / 4.0;
      const double label_x = spec.log_x ? std::pow(10.0, tx) : tx;
      const double label_y = spec.log_y ? std::pow(10.0, ty) : ty;
      svg << "<line x1=\"" << px(tx) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << px(tx)
          << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << px(tx) << "\" y=\"" << kHeight - kBottom + 20
          << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(label_x) << "</text>\n";
      svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(ty) << "\" x2=\"" << kLeft
          << "\" y2=\"" << py(ty) << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(ty) + 4
          << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(label_y) << "</text>\n";
    }

    // polyline + markers
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) svg << px(xs[i]) << "," << py(ys[i]) << " ";
    svg << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      svg << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
          << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  } else {
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"13\">not enough points</text>\n";
  }

  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(spec.x_label)
      << (spec.log_x ? " (log)" : "") << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << escape(spec.y_label) << (spec.log_y ? " (log)" : "")
      << "</text>\n";
  if (!spec.annotation.empty())
    svg << "<text x=\"" << kLeft + 12 << "\" y=\"" << kTop + 16 << "\" font-size=\"13\">"
        << escape(spec.annotation) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pinlab
