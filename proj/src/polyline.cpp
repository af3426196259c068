#include "bvp/polyline.hpp"

#include <algorithm>

namespace bvp {

ClosedPolyline::ClosedPolyline(std::vector<Vec2> points) : vertices_(std::move(points)) {
  if (vertices_.empty()) return;
  vertices_.push_back(vertices_.front());
  cumulative_.assign(vertices_.size(), 0.0);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + distance(vertices_[i - 1], vertices_[i]);
  }
  length_ = cumulative_.back();
}

Vec2 ClosedPolyline::point_at(double t) const {
  if (vertices_.empty()) return {};
  if (length_ == 0.0) return vertices_.front();
  const double s = wrap_angle(t) / kTwoPi * length_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  if (i >= cumulative_.size()) return vertices_.back();
  const double seg = cumulative_[i] - cumulative_[i - 1];
  return seg > 0.0 ? lerp(vertices_[i - 1], vertices_[i], (s - cumulative_[i - 1]) / seg)
                   : vertices_[i];
}

Vec2 ClosedPolyline::centroid() const {
  Vec2 c;
  const std::size_t n = size();
  if (n == 0) return c;
  for (std::size_t i = 0; i < n; ++i) c += vertices_[i];
  return (1.0 / static_cast<double>(n)) * c;
}

double ClosedPolyline::signed_area() const {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) a += cross(vertices_[i], vertices_[i + 1]);
  return 0.5 * a;
}

ClosedPolyline ClosedPolyline::rotated(std::size_t shift) const {
  const std::size_t n = size();
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(vertices_[(i + shift) % n]);
  return ClosedPolyline(std::move(pts));
}

ClosedPolyline ClosedPolyline::reversed() const {
  std::vector<Vec2> pts(vertices_.rbegin(), vertices_.rend());
  if (!pts.empty()) pts.pop_back();
  return ClosedPolyline(std::move(pts));
}

}  // namespace bvp
