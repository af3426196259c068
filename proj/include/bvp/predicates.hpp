#pragma once

#include "bvp/vec2.hpp"

namespace bvp {

/// Sign of the orientation determinant of (a, b, c): +1 for a left turn,
/// -1 for a right turn, 0 when collinear. Exact for double input: a
/// floating-point filter decides most cases, rational arithmetic the rest.
int orient2d(Vec2 a, Vec2 b, Vec2 c);

/// Whether c lies on the closed segment [a, b], given orient2d(a, b, c) == 0.
bool on_collinear_segment(Vec2 a, Vec2 b, Vec2 c);

}  // namespace bvp
