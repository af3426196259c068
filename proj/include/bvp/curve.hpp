#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bvp/path.hpp"
#include "bvp/profile.hpp"
#include "bvp/vec2.hpp"

namespace bvp {

enum class Side { left, right };

class ValidationError : public std::runtime_error {
 public:
  enum class Code {
    trace_discontinuity,
    overlapping_intervals,
    interval_gap,
    zero_length_jump,
    nonmonotone_samples,
    allocation_mismatch,
    malformed,
  };

  ValidationError(Code code, std::string field, const std::string& message);

  Code code() const { return code_; }
  /// Location of the offending entry, e.g. "pieces[3].cantor.samples[17]".
  const std::string& field() const { return field_; }

 private:
  Code code_;
  std::string field_;
};

const char* to_string(ValidationError::Code code);

/// Cumulative variation of one arc over its normalized parameter u in [0, 1].
/// Sampled data lives on a uniform grid and is read piecewise-linearly.
class CumulativeVariation {
 public:
  enum class Kind { linear, sampled };

  static CumulativeVariation linear(double total);
  static CumulativeVariation sampled(std::vector<double> samples);

  Kind kind() const { return kind_; }
  double total() const { return total_; }
  const std::vector<double>& samples() const { return samples_; }

  double at(double u) const;

  /// Knot parameters in [0, 1] (endpoints only for linear data).
  std::vector<double> knots() const;

 private:
  Kind kind_ = Kind::linear;
  double total_ = 0.0;
  std::vector<double> samples_;
};

struct Arc {
  double theta0 = 0.0;
  double theta1 = 0.0;
  Path path = Path::point({});
  CumulativeVariation ac = CumulativeVariation::linear(0.0);
  CumulativeVariation cantor = CumulativeVariation::linear(0.0);

  double span() const { return theta1 - theta0; }
  double mass() const { return ac.total() + cantor.total(); }

  /// Position along `path` as a fraction of its length, theta in [theta0, theta1].
  double fraction(double theta) const;
  Vec2 value(double theta) const { return path.at(fraction(theta)); }
  /// (ac + cantor) / mass over the arc's own parameter, as knots in theta.
  PiecewiseLinear fraction_profile() const;
};

struct Jump {
  double theta = 0.0;
  Vec2 left;
  Vec2 right;

  double size() const { return distance(left, right); }
};

using Piece = std::variant<Arc, Jump>;

struct VariationDecomposition {
  double ac_mass = 0.0;
  double jump_mass = 0.0;
  double cantor_mass = 0.0;
  double total = 0.0;
};

/// A validated BV datum on the unit circle. Immutable; build it with validate().
///
/// After validation the piece list starts with an arc, arc angles are
/// unwrapped so that they tile [origin, origin + 2pi), and each jump sits at
/// the boundary it separates (jump angles are kept in [0, 2pi)). A jump at the
/// seam, if any, is the last piece.
class Curve {
 public:
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t arc_count() const { return arc_pieces_.size(); }
  std::size_t jump_count() const { return pieces_.size() - arc_pieces_.size(); }
  const Arc& arc(std::size_t i) const { return std::get<Arc>(pieces_[arc_pieces_[i]]); }
  /// Index into pieces() of the i-th arc.
  std::size_t arc_piece(std::size_t i) const { return arc_pieces_[i]; }

  /// Start angle of the first arc, in [0, 2pi).
  double origin() const { return origin_; }

  /// True when the trace does not close up at the seam and no jump is declared
  /// there; the datum is then read on the interval [origin, origin + 2pi].
  bool open_seam() const { return open_seam_; }
  Vec2 seam_start() const { return arc(0).path.start(); }
  Vec2 seam_end() const { return arc(arc_count() - 1).path.end(); }

  /// One-sided trace at an angle (any real; reduced mod 2pi).
  Vec2 evaluate(double theta, Side side) const;

  /// Angular mean (1/2pi) * integral of gamma, by midpoint rule on `nodes` points.
  Vec2 centroid(std::size_t nodes = 4096) const;

 private:
  friend Curve validate(std::vector<Piece> raw);
  Curve() = default;

  std::size_t locate_arc(double unwrapped) const;

  std::vector<Piece> pieces_;
  std::vector<std::size_t> arc_pieces_;
  std::vector<double> arc_starts_;
  double origin_ = 0.0;
  bool open_seam_ = false;
};

/// Checks every data-model invariant and returns the normalized curve.
/// Throws ValidationError.
Curve validate(std::vector<Piece> raw);

VariationDecomposition total_variation(const Curve& curve);

inline Vec2 evaluate(const Curve& curve, double theta, Side side) {
  return curve.evaluate(theta, side);
}

}  // namespace bvp
