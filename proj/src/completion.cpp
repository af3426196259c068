#include "bvp/completion.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvp/apportion.hpp"

namespace bvp {

namespace {

/// Mass of the arc restricted to the unwrapped angle window [x, y].
double arc_mass_between(const Arc& arc, double x, double y) {
  const double lo = std::max(x, arc.theta0);
  const double hi = std::min(y, arc.theta1);
  if (hi <= lo) return 0.0;
  auto cum = [&](double th) {
    const double u = (th - arc.theta0) / arc.span();
    return arc.ac.at(u) + arc.cantor.at(u);
  };
  return cum(hi) - cum(lo);
}

}  // namespace

CompletedCurve completed_curve(const Curve& curve, std::size_t n_vertices) {
  CompletedCurve out;
  const auto& pieces = curve.pieces();
  const VariationDecomposition tv = total_variation(curve);
  if (tv.total == 0.0 && !curve.open_seam()) {
    out.polyline = ClosedPolyline({curve.arc(0).path.start()});
    out.tags.push_back({0, 0.0});
    return out;
  }

  std::vector<double> mass;
  for (const Piece& p : pieces) {
    mass.push_back(std::holds_alternative<Arc>(p) ? std::get<Arc>(p).path.length()
                                                  : std::get<Jump>(p).size());
  }
  if (curve.open_seam()) mass.push_back(distance(curve.seam_end(), curve.seam_start()));

  std::vector<std::size_t> budget = apportion(mass, 2, n_vertices);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (const auto* arc = std::get_if<Arc>(&pieces[i])) {
      budget[i] = std::max(budget[i], arc->path.corner_count());
    }
  }

  std::vector<Vec2> points;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    const std::size_t b = budget[i];
    if (i == pieces.size()) {
      for (std::size_t j = 0; j < b; ++j) {
        const double f = static_cast<double>(j) / static_cast<double>(b);
        points.push_back(lerp(curve.seam_end(), curve.seam_start(), f));
        out.tags.push_back({i, f});
      }
    } else if (const auto* arc = std::get_if<Arc>(&pieces[i])) {
      if (arc->path.length() == 0.0) {
        for (std::size_t j = 0; j < b; ++j) {
          points.push_back(arc->path.start());
          out.tags.push_back({i, (static_cast<double>(j) + 0.5) / static_cast<double>(b)});
        }
      } else {
        for (double f : arc->path.sample_fractions(b)) {
          points.push_back(arc->path.at(f));
          out.tags.push_back({i, f});
        }
      }
    } else {
      const Jump& jump = std::get<Jump>(pieces[i]);
      for (std::size_t j = 0; j < b; ++j) {
        const double f = static_cast<double>(j) / static_cast<double>(b);
        points.push_back(lerp(jump.left, jump.right, f));
        out.tags.push_back({i, f});
      }
    }
  }
  out.polyline = ClosedPolyline(std::move(points));
  return out;
}

double variation_upto(const Curve& curve, double t, Side side) {
  double v = 0.0;
  for (const Piece& p : curve.pieces()) {
    if (const auto* arc = std::get_if<Arc>(&p)) {
      // The arc may straddle 2pi in unwrapped coordinates.
      v += arc_mass_between(*arc, 0.0, t);
      v += arc_mass_between(*arc, kTwoPi, kTwoPi + t);
    } else {
      const Jump& jump = std::get<Jump>(p);
      const bool inside = side == Side::right ? jump.theta <= t : jump.theta < t;
      if (inside) v += jump.size();
    }
  }
  return v;
}

ReparamProfile reparam_profile(const Curve& curve) {
  const double length = total_variation(curve).total;
  if (!(length > 0.0)) throw std::domain_error("reparam_profile needs positive total variation");

  std::vector<double> ts{0.0, kTwoPi};
  auto add_wrapped = [&](double th) {
    const double w = wrap_angle(th);
    ts.push_back(w);
  };
  for (const Piece& p : curve.pieces()) {
    if (const auto* arc = std::get_if<Arc>(&p)) {
      const PiecewiseLinear prof = arc->fraction_profile();
      for (double x : prof.x()) add_wrapped(x);
    } else {
      add_wrapped(std::get<Jump>(p).theta);
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  ReparamProfile prof;
  prof.total_length_ = length;
  const double c = length / (length + kTwoPi);
  for (double t : ts) {
    const double sl = t == 0.0 ? 0.0 : c * (t + variation_upto(curve, t, Side::left));
    const double sr = t == kTwoPi ? length : c * (t + variation_upto(curve, t, Side::right));
    prof.knots_.push_back({t, sl, std::max(sl, sr)});
  }
  prof.knots_.back().s_left = length;
  prof.knots_.back().s_right = length;
  return prof;
}

std::vector<ReparamProfile::JumpInterval> ReparamProfile::jumps() const {
  std::vector<JumpInterval> out;
  for (const Knot& k : knots_) {
    if (k.s_right > k.s_left) out.push_back({k.t, k.s_left, k.s_right});
  }
  return out;
}

double ReparamProfile::at(double t, Side side) const {
  t = std::clamp(t, 0.0, kTwoPi);
  auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                             [](const Knot& k, double v) { return k.t < v; });
  if (it != knots_.end() && it->t == t) return side == Side::left ? it->s_left : it->s_right;
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.s_right + w * (hi.s_left - lo.s_right);
}

}  // namespace bvp
