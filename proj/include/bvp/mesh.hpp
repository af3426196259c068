#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bvp/vec2.hpp"

namespace bvp {

struct TriMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;  // counterclockwise
  std::vector<std::size_t> boundary_loop;             // counterclockwise
  double radius = 1.0;                                // boundary circle radius

  double triangle_area(std::size_t t) const;
  double area() const;
  TriMesh scaled(double factor) const;
};

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Concentric-ring triangulation of the unit disk with target edge length h.
/// Boundary vertex k sits at angle 2pi k / boundary_samples; the center is
/// vertex 0. The interior is never made finer than 2pi / (1.5 boundary_samples).
/// Throws MeshError unless 0 < h < 1 and boundary_samples >= 8.
TriMesh make_disk_mesh(double h, std::size_t boundary_samples);

/// Default boundary sample count for a target edge length.
std::size_t default_boundary_samples(double h);

struct MeshQuality {
  bool valid = false;
  std::vector<std::string> problems;
  double min_angle_deg = 0.0;
  double max_edge = 0.0;
  double min_area = 0.0;
  long euler_characteristic = 0;
};

/// Audits orientation, conformity (each interior edge shared by exactly two
/// oppositely oriented triangles, boundary edges forming the loop), boundary
/// placement on the circle, Euler characteristic 1 and nondegeneracy.
MeshQuality check_mesh(const TriMesh& mesh);

}  // namespace bvp
