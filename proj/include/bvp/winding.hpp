#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bvp/polyline.hpp"

namespace bvp {

/// The query point lies on (or within snap distance of) the curve.
class PointOnCurveError : public std::domain_error {
 public:
  PointOnCurveError(Vec2 point, std::size_t segment, double distance);
  Vec2 point() const { return point_; }
  std::size_t segment() const { return segment_; }
  double distance() const { return distance_; }

 private:
  Vec2 point_;
  std::size_t segment_;
  double distance_;
};

/// Snap distance for a polyline: rel_eps times the larger bounding-box side.
double snap_distance(const ClosedPolyline& poly, double rel_eps = 1e-12);

/// Crossing-count winding number with exact orientation tests.
int winding_number(const ClosedPolyline& poly, Vec2 point, double rel_eps = 1e-12);
/// Winding number from the summed signed angles, rounded to an integer.
int winding_number_angle(const ClosedPolyline& poly, Vec2 point, double rel_eps = 1e-12);

class ArrangementError : public std::runtime_error {
 public:
  ArrangementError(std::size_t segment_a, std::size_t segment_b, const std::string& message);
  std::pair<std::size_t, std::size_t> segments() const { return {a_, b_}; }

 private:
  std::size_t a_;
  std::size_t b_;
};

struct Face {
  std::vector<Vec2> boundary;  // closed cycle, counterclockwise for bounded faces
  int winding = 0;
  double area = 0.0;  // 0 for the unbounded face
  bool unbounded = false;
};

/// Planar subdivision induced by a closed polyline. Segment i of the input
/// runs from vertex i to vertex i+1.
struct Arrangement {
  std::vector<Face> faces;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t snapped_points = 0;  // intersection points merged by snapping
};

Arrangement build_arrangement(const ClosedPolyline& poly, double rel_eps = 1e-12);

/// Exact integral of |deg(poly, y)| over the plane.
double winding_area(const ClosedPolyline& poly, double rel_eps = 1e-12);

struct GridEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Jittered-grid estimate of the integral of |deg| over the bounding box
/// (grown by 1%), one uniform sample per cell of a resolution x resolution grid.
GridEstimate winding_area_grid(const ClosedPolyline& poly, int resolution, std::uint64_t seed = 1);

}  // namespace bvp
