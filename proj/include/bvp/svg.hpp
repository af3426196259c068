#pragma once

#include <string>

#include "bvp/discrete_map.hpp"
#include "bvp/polyline.hpp"

namespace bvp {

/// Faces of the curve's arrangement shaded with opacity |w| / max |w|, the
/// curve drawn on top.
std::string curve_svg(const ClosedPolyline& poly);

/// Domain triangles colored by the magnitude of the map's vertex values.
std::string mesh_svg(const DiscreteMap& map);

}  // namespace bvp
