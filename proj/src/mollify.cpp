#include "bvp/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bvp {

namespace {

/// Piecewise-linear interpolant of `c` on 2^level uniform cells, evaluated at u.
double dyadic_interp(const CumulativeVariation& c, std::size_t cells, double u) {
  const double pos = std::clamp(u, 0.0, 1.0) * static_cast<double>(cells);
  const std::size_t i = std::min(static_cast<std::size_t>(pos), cells - 1);
  const double t = pos - static_cast<double>(i);
  const double a = c.at(static_cast<double>(i) / static_cast<double>(cells));
  const double b = c.at(static_cast<double>(i + 1) / static_cast<double>(cells));
  return a + t * (b - a);
}

PiecewiseLinear arc_profile(const Arc& arc, double x0, double x1, int k) {
  const double m = arc.mass();
  if (m == 0.0) return PiecewiseLinear::affine(x0, x1, 0.0, 0.0);

  std::vector<double> u = arc.ac.knots();
  std::size_t cells = 1;
  if (arc.cantor.total() > 0.0) {
    cells = std::size_t{1} << std::min(k, kMaxDyadicLevel);
    for (std::size_t i = 0; i <= cells; ++i) {
      u.push_back(static_cast<double>(i) / static_cast<double>(cells));
    }
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());

  std::vector<double> xs;
  std::vector<double> ys;
  for (double ui : u) {
    const double x = ui == 1.0 ? x1 : x0 + ui * (x1 - x0);
    const double y =
        std::clamp((arc.ac.at(ui) + dyadic_interp(arc.cantor, cells, ui)) / m, 0.0, 1.0);
    if (xs.empty() || x > xs.back()) {
      xs.push_back(x);
      ys.push_back(ys.empty() ? y : std::max(y, ys.back()));
    } else {
      ys.back() = std::max(ys.back(), y);
    }
  }
  if (xs.size() < 2) return PiecewiseLinear::affine(x0, x1, 0.0, 1.0);
  ys.front() = 0.0;
  ys.back() = 1.0;
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

}  // namespace

LipschitzCurve::LipschitzCurve(double origin, std::vector<LipschitzSegment> segments)
    : origin_(origin), segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("LipschitzCurve needs at least one segment");
  for (const auto& s : segments_) starts_.push_back(s.theta0);
}

Vec2 LipschitzCurve::value(double theta) const {
  const double u = origin_ + wrap_angle(theta - origin_);
  auto it = std::upper_bound(starts_.begin(), starts_.end(), u);
  const std::size_t i = it == starts_.begin() ? 0 : static_cast<std::size_t>(it - starts_.begin()) - 1;
  const LipschitzSegment& s = segments_[i];
  return s.path.at(s.fraction(u));
}

double LipschitzCurve::total_variation() const {
  double v = 0.0;
  for (const auto& s : segments_) v += s.variation();
  return v;
}

double LipschitzCurve::angle_of(std::size_t piece, double fraction) const {
  for (const auto& s : segments_) {
    if (s.piece != piece) continue;
    if (s.path.length() == 0.0) return s.theta0 + fraction * (s.theta1 - s.theta0);
    return s.fraction.inverse(fraction);
  }
  throw std::out_of_range("no segment replaces piece " + std::to_string(piece));
}

ClosedPolyline LipschitzCurve::sampled(std::size_t n) const {
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    pts.push_back(value(origin_ + kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
  }
  return ClosedPolyline(std::move(pts));
}

std::vector<double> transition_half_widths(const Curve& curve, int k) {
  if (k < 1) throw std::invalid_argument("mollification level k must be >= 1");
  const auto& pieces = curve.pieces();
  const std::size_t jumps = curve.jump_count();
  std::vector<double> out;
  if (jumps == 0) return out;
  const double w = std::min(kTwoPi / (8.0 * static_cast<double>(jumps)), 1.0 / static_cast<double>(k));
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (!std::holds_alternative<Jump>(pieces[p])) continue;
    const Arc& before = std::get<Arc>(pieces[p - 1]);
    const Arc& after = std::get<Arc>(pieces[(p + 1) % pieces.size()]);
    out.push_back(std::min({0.5 * w, 0.25 * before.span(), 0.25 * after.span()}));
  }
  return out;
}

LipschitzCurve mollify_sequence(const Curve& curve, int k) {
  const auto& pieces = curve.pieces();
  const std::vector<double> half = transition_half_widths(curve, k);

  // Shrink of each piece's interval on its left and right ends.
  std::vector<double> shrink_left(pieces.size(), 0.0);
  std::vector<double> shrink_right(pieces.size(), 0.0);
  std::vector<double> jump_half(pieces.size(), 0.0);
  for (std::size_t p = 0, j = 0; p < pieces.size(); ++p) {
    if (!std::holds_alternative<Jump>(pieces[p])) continue;
    jump_half[p] = half[j++];
    shrink_right[p - 1] = jump_half[p];
    shrink_left[(p + 1) % pieces.size()] = jump_half[p];
  }

  const bool seam_jump = std::holds_alternative<Jump>(pieces.back());
  const double origin = curve.origin() - (seam_jump ? jump_half.back() : 0.0);

  std::vector<LipschitzSegment> segments;
  auto jump_segment = [&](std::size_t p, double center) {
    const Jump& jump = std::get<Jump>(pieces[p]);
    const double h = jump_half[p];
    LipschitzSegment s;
    s.theta0 = center - h;
    s.theta1 = center + h;
    s.path = Path::segment(jump.left, jump.right);
    s.fraction = PiecewiseLinear::affine(s.theta0, s.theta1, 0.0, 1.0);
    s.piece = p;
    return s;
  };

  if (seam_jump) segments.push_back(jump_segment(pieces.size() - 1, curve.origin()));
  double boundary = curve.origin();
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (const auto* arc = std::get_if<Arc>(&pieces[p])) {
      LipschitzSegment s;
      s.theta0 = arc->theta0 + shrink_left[p];
      s.theta1 = arc->theta1 - shrink_right[p];
      s.path = arc->path;
      s.fraction = arc_profile(*arc, s.theta0, s.theta1, k);
      s.piece = p;
      segments.push_back(std::move(s));
      boundary = arc->theta1;
    } else if (p + 1 < pieces.size() || !seam_jump) {
      segments.push_back(jump_segment(p, boundary));
    }
  }
  return LipschitzCurve(origin, std::move(segments));
}

double angular_l1_distance(const Curve& curve, const LipschitzCurve& phi, std::size_t nodes_per_cell) {
  const double o = phi.origin();
  std::vector<double> breaks{o, o + kTwoPi};
  auto add = [&](double a) {
    const double u = o + wrap_angle(a - o);
    breaks.push_back(u);
  };
  for (const auto& s : phi.segments()) add(s.theta0);
  for (std::size_t i = 0; i < curve.arc_count(); ++i) add(curve.arc(i).theta0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    const double a = breaks[c];
    const double b = breaks[c + 1];
    const double dx = (b - a) / static_cast<double>(nodes_per_cell);
    double cell = 0.0;
    for (std::size_t j = 0; j < nodes_per_cell; ++j) {
      const double t = a + (static_cast<double>(j) + 0.5) * dx;
      cell += distance(phi.value(t), curve.evaluate(t, Side::right));
    }
    total += cell * dx;
  }
  return total;
}

}  // namespace bvp
