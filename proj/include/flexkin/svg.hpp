#ifndef FLEXKIN_SVG_HPP
#define FLEXKIN_SVG_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "flexkin/design.hpp"

namespace flexkin {

struct SvgStyle {
  double width = 480;
  double margin = 0.10;  // fraction of the drawing extent
  std::string title;
};

/// Averaged configuration as SVG: base and platform polygons, legs in red, labelled anchors.
/// The y axis points up.
inline std::string render_svg(const SixConfig<long double>& c, const SvgStyle& style = {}) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto& p : c.pts) {
    xmin = std::min(xmin, static_cast<double>(p.a));
    xmax = std::max(xmax, static_cast<double>(p.a));
    ymin = std::min(ymin, static_cast<double>(p.b));
    ymax = std::max(ymax, static_cast<double>(p.b));
  }
  double extent = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double pad = style.margin * extent;
  xmin -= pad;
  ymin -= pad;
  const double w = (xmax - xmin) + pad, h = (ymax - ymin) + pad;
  const double unit = extent / 100.0;  // stroke and font scale

  std::ostringstream os;
  os.precision(10);
  auto X = [&](std::size_t k) { return static_cast<double>(c.pts[k].a); };
  auto Y = [&](std::size_t k) { return -static_cast<double>(c.pts[k].b); };
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.width * h / w
     << "\" viewBox=\"" << xmin << " " << -(ymin + h) << " " << w << " " << h << "\">\n";
  if (!style.title.empty()) os << "  <title>" << style.title << "</title>\n";
  auto polygon = [&](const char* cls, std::size_t o, const char* fill) {
    os << "  <polygon class=\"" << cls << "\" points=\"";
    for (std::size_t k = o; k < o + 3; ++k) os << X(k) << "," << Y(k) << (k + 1 < o + 3 ? " " : "");
    os << "\" fill=\"" << fill << "\" fill-opacity=\"0.35\" stroke=\"black\" stroke-width=\"" << 0.4 * unit << "\"/>\n";
  };
  polygon("base", 0, "#8fa8c8");
  polygon("platform", 3, "#c8c08f");
  for (std::size_t i = 0; i < 3; ++i)
    os << "  <line class=\"leg\" x1=\"" << X(i) << "\" y1=\"" << Y(i) << "\" x2=\"" << X(i + 3) << "\" y2=\"" << Y(i + 3)
       << "\" stroke=\"red\" stroke-width=\"" << 0.8 * unit << "\"/>\n";
  for (std::size_t k = 0; k < 6; ++k) {
    os << "  <circle class=\"vertex\" cx=\"" << X(k) << "\" cy=\"" << Y(k) << "\" r=\"" << 1.2 * unit << "\" fill=\"black\"/>\n";
    os << "  <text class=\"label\" x=\"" << X(k) + 1.5 * unit << "\" y=\"" << Y(k) - 1.5 * unit << "\" font-size=\"" << 4 * unit
       << "\">x&#772;<tspan baseline-shift=\"sub\" font-size=\"" << 3 * unit << "\">" << k + 1 << "</tspan></text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace flexkin

#endif  // FLEXKIN_SVG_HPP
