#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "bvp/vec2.hpp"

namespace bvp {

struct PolylinePath {
  std::vector<Vec2> points;
};

/// Arc of the circle |y - center| = radius from polar angle phi0 to phi1
/// (phi1 < phi0 traverses clockwise).
struct CircleArcPath {
  Vec2 center;
  double radius = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;
};

struct PointPath {
  Vec2 at;
};

/// Geometric trace of an arc, parametrized by arclength fraction in [0, 1].
class Path {
 public:
  using Shape = std::variant<PolylinePath, CircleArcPath, PointPath>;

  explicit Path(Shape shape);

  static Path point(Vec2 p) { return Path(PointPath{p}); }
  static Path segment(Vec2 a, Vec2 b) { return Path(PolylinePath{{a, b}}); }

  const Shape& shape() const { return shape_; }
  double length() const { return length_; }
  Vec2 start() const { return at(0.0); }
  Vec2 end() const { return at(1.0); }
  Vec2 at(double fraction) const;

  /// Number of straight pieces that must each receive a sample so that the
  /// sampled polyline keeps every corner (1 for smooth or degenerate paths).
  std::size_t corner_count() const;

  /// Arclength fractions of `budget` samples in [0, 1), starting at 0.
  /// Polyline corners are always included; requires budget >= corner_count().
  std::vector<double> sample_fractions(std::size_t budget) const;

 private:
  Shape shape_;
  std::vector<double> cumulative_;  // polyline arclength at each point
  double length_ = 0.0;
};

}  // namespace bvp
