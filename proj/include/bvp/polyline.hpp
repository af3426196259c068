#pragma once

#include <cstddef>
#include <vector>

#include "bvp/vec2.hpp"

namespace bvp {

/// Closed polygonal curve. The stored vertex list repeats the first vertex at
/// the end. Its natural parametrization over [0, 2pi) is constant-speed.
class ClosedPolyline {
 public:
  ClosedPolyline() = default;
  /// `points` are the vertex slots in order; the closing vertex is appended.
  explicit ClosedPolyline(std::vector<Vec2> points);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  /// Number of distinct vertex slots (closing duplicate excluded).
  std::size_t size() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }
  bool empty() const { return vertices_.empty(); }
  Vec2 vertex(std::size_t i) const { return vertices_[i % size()]; }
  double length() const { return length_; }

  /// Constant-speed point at parameter t in [0, 2pi).
  Vec2 point_at(double t) const;

  /// Mean of the vertex slots.
  Vec2 centroid() const;
  /// Shoelace signed area (integral of the winding number).
  double signed_area() const;

  /// Cyclic shift of the starting vertex.
  ClosedPolyline rotated(std::size_t shift) const;
  ClosedPolyline reversed() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<double> cumulative_;
  double length_ = 0.0;
};

}  // namespace bvp
