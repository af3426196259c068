#include "bvp/predicates.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace bvp {

namespace {

// Shewchuk's first-stage bound for the 2D orientation test.
constexpr double kOrientBound = 3.3306690738754716e-16;

int exact_orient(Vec2 a, Vec2 b, Vec2 c) {
  using boost::multiprecision::cpp_rational;
  const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  const cpp_rational det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
  return det.sign();
}

}  // namespace

int orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  if (left == 0.0 && right == 0.0) return 0;
  return exact_orient(a, b, c);
}

bool on_collinear_segment(Vec2 a, Vec2 b, Vec2 c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

}  // namespace bvp
