#include "bvp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bvp/winding.hpp"

namespace bvp {

namespace {

struct Frame {
  double x0, y0, scale;
  double px(double x) const { return (x - x0) * scale + 10.0; }
  double py(double y) const { return 510.0 - (y - y0) * scale; }
};

Frame frame_for(double x0, double x1, double y0, double y1) {
  const double side = std::max({x1 - x0, y1 - y0, 1e-12});
  return {x0, y0, 500.0 / side};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const char* kHeader =
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" viewBox=\"0 0 520 520\">\n"
    "<rect width=\"520\" height=\"520\" fill=\"white\"/>\n";

}  // namespace

std::string curve_svg(const ClosedPolyline& poly) {
  std::ostringstream out;
  out << kHeader;
  if (poly.empty()) return out.str() + "</svg>\n";
  double x0 = poly.vertex(0).x, x1 = x0, y0 = poly.vertex(0).y, y1 = y0;
  for (Vec2 v : poly.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  const Frame f = frame_for(x0, x1, y0, y1);
  if (poly.length() > 0.0) {
    const Arrangement arr = build_arrangement(poly);
    int wmax = 0;
    for (const Face& face : arr.faces) wmax = std::max(wmax, std::abs(face.winding));
    for (const Face& face : arr.faces) {
      if (face.unbounded || face.winding == 0) continue;
      out << "<polygon fill=\"#3060c0\" fill-opacity=\"" << fmt(std::abs(face.winding) / double(wmax))
          << "\" stroke=\"none\" points=\"";
      for (Vec2 v : face.boundary) out << fmt(f.px(v.x)) << ',' << fmt(f.py(v.y)) << ' ';
      out << "\"/>\n";
    }
  }
  out << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) out << fmt(f.px(poly.vertex(i).x)) << ',' << fmt(f.py(poly.vertex(i).y)) << ' ';
  out << "\"/>\n</svg>\n";
  return out.str();
}

std::string mesh_svg(const DiscreteMap& map) {
  std::ostringstream out;
  out << kHeader;
  const double r = map.mesh.radius;
  const Frame f = frame_for(-r, r, -r, r);
  double vmax = 0.0;
  for (Vec2 v : map.values) vmax = std::max(vmax, norm(v));
  for (const auto& tri : map.mesh.triangles) {
    const double mag = (norm(map.values[tri[0]]) + norm(map.values[tri[1]]) + norm(map.values[tri[2]])) / 3.0;
    const int level = vmax > 0.0 ? static_cast<int>(std::lround(255.0 * mag / vmax)) : 0;
    char color[8];
    std::snprintf(color, sizeof color, "#%02x%02x%02x", level, 64, 255 - level);
    out << "<polygon fill=\"" << color << "\" stroke=\"" << color << "\" stroke-width=\"0.2\" points=\"";
    for (std::size_t k : tri) out << fmt(f.px(map.mesh.vertices[k].x)) << ',' << fmt(f.py(map.mesh.vertices[k].y)) << ' ';
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bvp
