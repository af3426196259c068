#include "bvp/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bvp {

namespace {

constexpr double kAngleTol = 1e-9;

double trace_tol(Vec2 a, Vec2 b) {
  const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
  return 1e-9 * scale;
}

std::string piece_field(std::size_t i) { return "pieces[" + std::to_string(i) + "]"; }

[[noreturn]] void fail(ValidationError::Code code, std::string field, const std::string& msg) {
  throw ValidationError(code, std::move(field), msg);
}

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void check_cumulative(const CumulativeVariation& c, const std::string& field) {
  if (!std::isfinite(c.total()) || c.total() < 0.0) {
    fail(ValidationError::Code::malformed, field + ".total", "total must be finite and >= 0");
  }
  if (c.kind() == CumulativeVariation::Kind::linear) return;
  const auto& s = c.samples();
  if (s.size() < 2) {
    fail(ValidationError::Code::malformed, field + ".samples", "need at least two samples");
  }
  if (s.front() != 0.0) {
    fail(ValidationError::Code::malformed, field + ".samples[0]", "samples must start at 0");
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || s[i] < s[i - 1]) {
      fail(ValidationError::Code::nonmonotone_samples,
           field + ".samples[" + std::to_string(i) + "]",
           "cumulative samples must be nondecreasing");
    }
  }
}

void check_path(const Path& path, const std::string& field) {
  bool ok = true;
  if (const auto* p = std::get_if<PolylinePath>(&path.shape())) {
    ok = std::all_of(p->points.begin(), p->points.end(), finite);
  } else if (const auto* c = std::get_if<CircleArcPath>(&path.shape())) {
    ok = finite(c->center) && std::isfinite(c->radius) && std::isfinite(c->phi0) &&
         std::isfinite(c->phi1);
  } else if (const auto* q = std::get_if<PointPath>(&path.shape())) {
    ok = finite(q->at);
  }
  if (!ok) fail(ValidationError::Code::malformed, field + ".path", "non-finite path data");
}

void check_trace(Vec2 a, Vec2 b, const std::string& field, const char* what) {
  if (distance(a, b) > trace_tol(a, b)) {
    std::ostringstream msg;
    msg << what << ": (" << a.x << ", " << a.y << ") vs (" << b.x << ", " << b.y << "), gap "
        << distance(a, b);
    fail(ValidationError::Code::trace_discontinuity, field, msg.str());
  }
}

}  // namespace

ValidationError::ValidationError(Code code, std::string field, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " at " + field + ": " + message),
      code_(code),
      field_(std::move(field)) {}

const char* to_string(ValidationError::Code code) {
  switch (code) {
    case ValidationError::Code::trace_discontinuity: return "trace-discontinuity";
    case ValidationError::Code::overlapping_intervals: return "overlapping-intervals";
    case ValidationError::Code::interval_gap: return "interval-gap";
    case ValidationError::Code::zero_length_jump: return "zero-length-jump";
    case ValidationError::Code::nonmonotone_samples: return "nonmonotone-samples";
    case ValidationError::Code::allocation_mismatch: return "allocation-mismatch";
    case ValidationError::Code::malformed: return "malformed";
  }
  return "unknown";
}

CumulativeVariation CumulativeVariation::linear(double total) {
  CumulativeVariation c;
  c.kind_ = Kind::linear;
  c.total_ = total;
  return c;
}

CumulativeVariation CumulativeVariation::sampled(std::vector<double> samples) {
  CumulativeVariation c;
  c.kind_ = Kind::sampled;
  c.total_ = samples.empty() ? 0.0 : samples.back();
  c.samples_ = std::move(samples);
  return c;
}

double CumulativeVariation::at(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (kind_ == Kind::linear) return total_ * u;
  const std::size_t cells = samples_.size() - 1;
  const double pos = u * static_cast<double>(cells);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= cells) return samples_.back();
  const double t = pos - static_cast<double>(i);
  return samples_[i] + t * (samples_[i + 1] - samples_[i]);
}

std::vector<double> CumulativeVariation::knots() const {
  if (kind_ == Kind::linear) return {0.0, 1.0};
  const std::size_t cells = samples_.size() - 1;
  std::vector<double> k(samples_.size());
  for (std::size_t i = 0; i <= cells; ++i) {
    k[i] = static_cast<double>(i) / static_cast<double>(cells);
  }
  return k;
}

double Arc::fraction(double theta) const {
  const double m = mass();
  if (m == 0.0) return 0.0;
  const double u = std::clamp((theta - theta0) / span(), 0.0, 1.0);
  return std::clamp((ac.at(u) + cantor.at(u)) / m, 0.0, 1.0);
}

PiecewiseLinear Arc::fraction_profile() const {
  std::vector<double> u = ac.knots();
  const std::vector<double> uc = cantor.knots();
  u.insert(u.end(), uc.begin(), uc.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  const double m = mass();
  std::vector<double> x(u.size());
  std::vector<double> y(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    x[i] = theta0 + u[i] * span();
    y[i] = m > 0.0 ? std::clamp((ac.at(u[i]) + cantor.at(u[i])) / m, 0.0, 1.0) : 0.0;
  }
  x.front() = theta0;
  x.back() = theta1;
  // Collapse knots that coincide after the affine map.
  std::vector<double> xs{x.front()};
  std::vector<double> ys{y.front()};
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > xs.back()) {
      xs.push_back(x[i]);
      ys.push_back(std::max(y[i], ys.back()));
    } else {
      ys.back() = std::max(ys.back(), y[i]);
    }
  }
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

Curve validate(std::vector<Piece> raw) {
  if (raw.empty()) fail(ValidationError::Code::malformed, "pieces", "curve has no pieces");

  // Field checks use the caller's indices.
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string field = piece_field(i);
    if (auto* arc = std::get_if<Arc>(&raw[i])) {
      if (!std::isfinite(arc->theta0) || !std::isfinite(arc->theta1)) {
        fail(ValidationError::Code::malformed, field, "non-finite angle");
      }
      check_path(arc->path, field);
      check_cumulative(arc->ac, field + ".ac");
      check_cumulative(arc->cantor, field + ".cantor");
      const double len = arc->path.length();
      if (std::abs(arc->mass() - len) > 1e-9 * std::max(1.0, len)) {
        std::ostringstream msg;
        msg << "ac.total + cantor.total = " << arc->mass() << " but path length is " << len;
        fail(ValidationError::Code::allocation_mismatch, field, msg.str());
      }
    } else {
      auto& jump = std::get<Jump>(raw[i]);
      if (!std::isfinite(jump.theta) || !finite(jump.left) || !finite(jump.right)) {
        fail(ValidationError::Code::malformed, field, "non-finite jump data");
      }
      if (jump.size() == 0.0) {
        fail(ValidationError::Code::zero_length_jump, field, "jump with left == right must be omitted");
      }
    }
  }

  // Rotate so the list starts with an arc; keep the original indices for messages.
  const auto first_arc = std::find_if(raw.begin(), raw.end(),
                                      [](const Piece& p) { return std::holds_alternative<Arc>(p); });
  if (first_arc == raw.end()) fail(ValidationError::Code::malformed, "pieces", "curve has no arcs");
  const std::size_t shift = static_cast<std::size_t>(first_arc - raw.begin());
  std::vector<std::size_t> original(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) original[i] = (i + shift) % raw.size();
  std::rotate(raw.begin(), first_arc, raw.end());

  Curve curve;
  curve.pieces_.reserve(raw.size());
  curve.origin_ = wrap_angle(std::get<Arc>(raw.front()).theta0);
  double cursor = curve.origin_;
  const Arc* prev_arc = nullptr;
  const Jump* pending_jump = nullptr;
  std::size_t pending_index = 0;

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string field = piece_field(original[i]);
    if (auto* arc = std::get_if<Arc>(&raw[i])) {
      double span = arc->theta1 - arc->theta0;
      if (span <= 0.0) span += kTwoPi;
      if (span > kTwoPi + kAngleTol) {
        fail(ValidationError::Code::malformed, field, "arc spans more than 2pi");
      }
      const double start = cursor + std::remainder(wrap_angle(arc->theta0) - wrap_angle(cursor), kTwoPi);
      if (start < cursor - kAngleTol) {
        fail(ValidationError::Code::overlapping_intervals, field, "arc starts before the previous one ends");
      }
      if (start > cursor + kAngleTol) {
        fail(ValidationError::Code::interval_gap, field, "angle intervals leave a gap");
      }
      arc->theta0 = cursor;
      arc->theta1 = cursor + span;
      cursor = arc->theta1;
      if (cursor > curve.origin_ + kTwoPi + kAngleTol) {
        fail(ValidationError::Code::overlapping_intervals, field, "arcs cover more than 2pi");
      }

      if (prev_arc != nullptr) {
        if (pending_jump != nullptr) {
          check_trace(pending_jump->right, arc->path.start(), field, "jump right trace vs arc start");
        } else {
          check_trace(prev_arc->path.end(), arc->path.start(), field, "arc end vs next arc start");
        }
      }
      curve.arc_pieces_.push_back(curve.pieces_.size());
      curve.arc_starts_.push_back(arc->theta0);
      curve.pieces_.push_back(*arc);
      prev_arc = &std::get<Arc>(curve.pieces_.back());
      pending_jump = nullptr;
    } else {
      auto& jump = std::get<Jump>(raw[i]);
      if (pending_jump != nullptr) {
        fail(ValidationError::Code::malformed, field, "two jumps at the same boundary");
      }
      if (std::abs(std::remainder(jump.theta - cursor, kTwoPi)) > kAngleTol) {
        fail(ValidationError::Code::malformed, field, "jump angle does not sit on an arc boundary");
      }
      check_trace(prev_arc->path.end(), jump.left, field, "arc end vs jump left trace");
      jump.theta = wrap_angle(cursor);
      curve.pieces_.push_back(jump);
      pending_jump = &std::get<Jump>(curve.pieces_.back());
      pending_index = original[i];
    }
  }

  if (cursor < curve.origin_ + kTwoPi - kAngleTol) {
    fail(ValidationError::Code::interval_gap, "pieces", "angle intervals do not cover the circle");
  }
  // Snap the tiling so the last arc ends exactly one turn after the origin.
  std::get<Arc>(curve.pieces_[curve.arc_pieces_.back()]).theta1 = curve.origin_ + kTwoPi;

  const Arc& first = std::get<Arc>(curve.pieces_.front());
  if (pending_jump != nullptr) {
    check_trace(pending_jump->right, first.path.start(), piece_field(pending_index),
                "seam jump right trace vs first arc start");
  } else {
    const Vec2 a = prev_arc->path.end();
    const Vec2 b = first.path.start();
    curve.open_seam_ = distance(a, b) > trace_tol(a, b);
  }
  return curve;
}

std::size_t Curve::locate_arc(double unwrapped) const {
  auto it = std::upper_bound(arc_starts_.begin(), arc_starts_.end(), unwrapped);
  if (it == arc_starts_.begin()) return 0;
  return static_cast<std::size_t>(it - arc_starts_.begin()) - 1;
}

Vec2 Curve::evaluate(double theta, Side side) const {
  const double u = origin_ + wrap_angle(theta - origin_);
  const std::size_t i = locate_arc(u);
  const Arc& a = arc(i);
  if (side == Side::left && u == a.theta0) {
    // Left trace at a boundary: end of the preceding arc, unless nothing separates them.
    const std::size_t prev = (i + arc_count() - 1) % arc_count();
    const std::size_t piece_before = arc_pieces_[i] == 0 ? pieces_.size() - 1 : arc_pieces_[i] - 1;
    const bool jump_before = std::holds_alternative<Jump>(pieces_[piece_before]);
    const bool seam_break = (i == 0) && open_seam_;
    if (jump_before || seam_break) return arc(prev).path.end();
  }
  return a.value(u);
}

Vec2 Curve::centroid(std::size_t nodes) const {
  Vec2 sum;
  for (std::size_t j = 0; j < nodes; ++j) {
    const double theta = origin_ + kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes);
    sum += evaluate(theta, Side::right);
  }
  return (1.0 / static_cast<double>(nodes)) * sum;
}

VariationDecomposition total_variation(const Curve& curve) {
  VariationDecomposition d;
  for (const Piece& p : curve.pieces()) {
    if (const auto* arc = std::get_if<Arc>(&p)) {
      d.ac_mass += arc->ac.total();
      d.cantor_mass += arc->cantor.total();
    } else {
      d.jump_mass += std::get<Jump>(p).size();
    }
  }
  d.total = d.ac_mass + d.jump_mass + d.cantor_mass;
  return d;
}

}  // namespace bvp
