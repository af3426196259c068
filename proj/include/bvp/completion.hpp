#pragma once

#include <cstddef>
#include <vector>

#include "bvp/curve.hpp"
#include "bvp/polyline.hpp"

namespace bvp {

/// Where a completed-curve vertex came from. `piece` indexes Curve::pieces();
/// the value pieces().size() marks the chord that closes an open seam.
/// `fraction` is the arclength fraction along that piece, except on constant
/// arcs, where it only spreads the repeated vertices over the arc's interval.
struct VertexTag {
  std::size_t piece = 0;
  double fraction = 0.0;
};

struct CompletedCurve {
  ClosedPolyline polyline;
  std::vector<VertexTag> tags;  // one per vertex slot
};

/// Polyline through the image of the datum with every jump bridged by the
/// segment [left, right]. Vertex budgets follow variation mass (at least two
/// per piece, and every polyline corner kept), so the slot count can exceed
/// `n_vertices` when the pieces demand it. A datum of zero variation yields a
/// single-point polyline.
CompletedCurve completed_curve(const Curve& curve, std::size_t n_vertices);

/// The monotone limit map s(t) = L/(L+2pi) * (t + |dgamma|([0,t])), t in [0, 2pi].
class ReparamProfile {
 public:
  struct Knot {
    double t;
    double s_left;   // limit from below
    double s_right;  // value including the atom at t
  };
  struct JumpInterval {
    double t;
    double s_minus;
    double s_plus;
    double width() const { return s_plus - s_minus; }
  };

  double total_length() const { return total_length_; }
  const std::vector<Knot>& knots() const { return knots_; }
  std::vector<JumpInterval> jumps() const;
  double at(double t, Side side = Side::right) const;

 private:
  friend ReparamProfile reparam_profile(const Curve& curve);
  double total_length_ = 0.0;
  std::vector<Knot> knots_;
};

/// Requires positive total variation (throws std::domain_error otherwise).
ReparamProfile reparam_profile(const Curve& curve);

/// |dgamma|([0, t)) for Side::left, |dgamma|([0, t]) for Side::right; t in [0, 2pi].
double variation_upto(const Curve& curve, double t, Side side);

}  // namespace bvp
