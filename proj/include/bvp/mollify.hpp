#pragma once

#include <cstddef>
#include <vector>

#include "bvp/curve.hpp"
#include "bvp/path.hpp"
#include "bvp/polyline.hpp"
#include "bvp/profile.hpp"

namespace bvp {

/// phi(theta) = path.at(fraction(theta)) on [theta0, theta1] (unwrapped angles).
struct LipschitzSegment {
  double theta0 = 0.0;
  double theta1 = 0.0;
  Path path = Path::point({});
  PiecewiseLinear fraction;
  /// Index into Curve::pieces() of the arc or jump this segment replaces.
  std::size_t piece = 0;

  double variation() const { return path.length() * (fraction.back() - fraction.front()); }
};

/// A Lipschitz curve on the circle made of monotone reparametrized paths.
/// Segments tile [origin, origin + 2pi) in order.
class LipschitzCurve {
 public:
  LipschitzCurve(double origin, std::vector<LipschitzSegment> segments);

  double origin() const { return origin_; }
  const std::vector<LipschitzSegment>& segments() const { return segments_; }

  Vec2 value(double theta) const;
  double total_variation() const;

  /// Angle at which the segment replacing `piece` reaches arclength `fraction`
  /// of its path (midpoint of a flat stretch). Constant arcs map `fraction`
  /// affinely onto the segment's interval.
  double angle_of(std::size_t piece, double fraction) const;

  /// Samples value() at `n` equispaced angles starting at origin().
  ClosedPolyline sampled(std::size_t n) const;

 private:
  double origin_;
  std::vector<LipschitzSegment> segments_;
  std::vector<double> starts_;
};

/// Half-widths of the transition windows used at level k, one per jump in
/// piece order: min(w_k / 2, a quarter of each neighbouring arc's span), with
/// w_k = min(2pi / (8 * #jumps), 1 / k).
std::vector<double> transition_half_widths(const Curve& curve, int k);

/// Cantor cumulatives are interpolated on 2^min(k, kMaxDyadicLevel) cells.
inline constexpr int kMaxDyadicLevel = 16;

/// Strictly converging Lipschitz approximant phi_k: jumps become linear
/// transitions, arcs are compressed affinely to make room, Cantor parts are
/// replaced by dyadic piecewise-linear interpolants. TV(phi_k) = TV(gamma).
LipschitzCurve mollify_sequence(const Curve& curve, int k);

/// integral over [0, 2pi) of |phi(theta) - gamma(theta)|, by midpoint rule with
/// `nodes_per_cell` nodes on every cell between breakpoints of either curve.
double angular_l1_distance(const Curve& curve, const LipschitzCurve& phi,
                           std::size_t nodes_per_cell = 64);

}  // namespace bvp
