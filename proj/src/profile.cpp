#include "bvp/profile.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace bvp {

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw std::invalid_argument("PiecewiseLinear: need at least two matching knots");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("PiecewiseLinear: abscissae not increasing");
    if (y_[i] < y_[i - 1]) throw std::invalid_argument("PiecewiseLinear: values decreasing");
  }
}

PiecewiseLinear PiecewiseLinear::affine(double x0, double x1, double y0, double y1) {
  return PiecewiseLinear({x0, x1}, {y0, y1});
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return y_[i] + t * (y_[i + 1] - y_[i]);
}

double PiecewiseLinear::slope(std::size_t cell) const {
  assert(cell + 1 < x_.size());
  return (y_[cell + 1] - y_[cell]) / (x_[cell + 1] - x_[cell]);
}

double PiecewiseLinear::inverse(double y) const {
  y = std::clamp(y, y_.front(), y_.back());
  // Lowest x with f(x) >= y.
  auto lo_it = std::lower_bound(y_.begin(), y_.end(), y);
  std::size_t lo_i = static_cast<std::size_t>(lo_it - y_.begin());
  double x_lo;
  if (lo_i == 0) {
    x_lo = x_.front();
  } else {
    const double dy = y_[lo_i] - y_[lo_i - 1];
    x_lo = x_[lo_i - 1] + (y - y_[lo_i - 1]) / dy * (x_[lo_i] - x_[lo_i - 1]);
  }
  // Highest x with f(x) <= y.
  auto hi_it = std::upper_bound(y_.begin(), y_.end(), y);
  std::size_t hi_i = static_cast<std::size_t>(hi_it - y_.begin());
  double x_hi;
  if (hi_i == y_.size()) {
    x_hi = x_.back();
  } else {
    const double dy = y_[hi_i] - y_[hi_i - 1];
    x_hi = x_[hi_i - 1] + (y - y_[hi_i - 1]) / dy * (x_[hi_i] - x_[hi_i - 1]);
  }
  return 0.5 * (x_lo + x_hi);
}

}  // namespace bvp
