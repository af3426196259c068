#pragma once

#include <cstddef>
#include <vector>

namespace bvp {

/// Continuous nondecreasing piecewise-linear function given by knots.
/// Knot abscissae are strictly increasing; evaluation clamps outside the range.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> x, std::vector<double> y);

  static PiecewiseLinear affine(double x0, double x1, double y0, double y1);

  double operator()(double x) const;

  /// Midpoint of the level set {x : f(x) = y}; y is clamped into the range.
  double inverse(double y) const;

  /// Slope on the knot cell [x_i, x_{i+1}].
  double slope(std::size_t cell) const;

  std::size_t cells() const { return x_.empty() ? 0 : x_.size() - 1; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  double front() const { return y_.front(); }
  double back() const { return y_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace bvp
