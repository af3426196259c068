#include "bvp/discrete_map.hpp"

#include <cmath>

namespace bvp {

std::array<Vec2, 2> gradient(const DiscreteMap& map, std::size_t t) {
  const auto& tri = map.mesh.triangles[t];
  const Vec2 x0 = map.mesh.vertices[tri[0]];
  const Vec2 e1 = map.mesh.vertices[tri[1]] - x0;
  const Vec2 e2 = map.mesh.vertices[tri[2]] - x0;
  const Vec2 f1 = map.values[tri[1]] - map.values[tri[0]];
  const Vec2 f2 = map.values[tri[2]] - map.values[tri[0]];
  const double det = cross(e1, e2);
  // Rows of F * E^{-1} with E = [e1 e2], F = [f1 f2].
  const Vec2 inv_row0{e2.y / det, -e2.x / det};
  const Vec2 inv_row1{-e1.y / det, e1.x / det};
  return {Vec2{f1.x * inv_row0.x + f2.x * inv_row1.x, f1.x * inv_row0.y + f2.x * inv_row1.y},
          Vec2{f1.y * inv_row0.x + f2.y * inv_row1.x, f1.y * inv_row0.y + f2.y * inv_row1.y}};
}

double image_area(const DiscreteMap& map, std::size_t t) {
  const auto& tri = map.mesh.triangles[t];
  const Vec2 v0 = map.values[tri[0]];
  return 0.5 * cross(map.values[tri[1]] - v0, map.values[tri[2]] - v0);
}

double jacobian_tv(const DiscreteMap& map) {
  double s = 0.0;
  for (std::size_t t = 0; t < map.mesh.triangles.size(); ++t) s += std::abs(image_area(map, t));
  return s;
}

double area_functional(const DiscreteMap& map) {
  double s = 0.0;
  for (std::size_t t = 0; t < map.mesh.triangles.size(); ++t) {
    const double a = map.mesh.triangle_area(t);
    const auto g = gradient(map, t);
    const double j = image_area(map, t) / a;
    s += a * std::sqrt(1.0 + dot(g[0], g[0]) + dot(g[1], g[1]) + j * j);
  }
  return s;
}

double graph_area(const DiscreteMap& map) {
  double s = 0.0;
  for (std::size_t t = 0; t < map.mesh.triangles.size(); ++t) {
    const double a = map.mesh.triangle_area(t);
    const auto g = gradient(map, t);
    s += a * std::sqrt(1.0 + dot(g[0], g[0]) + dot(g[1], g[1]));
  }
  return s;
}

}  // namespace bvp
