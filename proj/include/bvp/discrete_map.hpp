#pragma once

#include <array>
#include <vector>

#include "bvp/mesh.hpp"

namespace bvp {

/// Piecewise-affine map on a triangulated disk: one value per mesh vertex.
struct DiscreteMap {
  TriMesh mesh;
  std::vector<Vec2> values;
};

/// Constant gradient of the affine map on triangle t, as rows (grad v1, grad v2).
std::array<Vec2, 2> gradient(const DiscreteMap& map, std::size_t t);

/// Signed image area of triangle t, i.e. J_T * area(T).
double image_area(const DiscreteMap& map, std::size_t t);

/// Sum over triangles of area * |J_T|.
double jacobian_tv(const DiscreteMap& map);

/// Sum over triangles of area * sqrt(1 + |G_T|^2 + J_T^2).
double area_functional(const DiscreteMap& map);

/// Sum over triangles of area * sqrt(1 + |G_T|^2).
double graph_area(const DiscreteMap& map);

}  // namespace bvp
