#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bvp/polyline.hpp"

namespace testing {

inline bvp::ClosedPolyline regular_ngon(std::size_t n, double radius = 1.0, double phase = 0.0) {
  std::vector<bvp::Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(bvp::polar(radius, phase + bvp::kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
  }
  return bvp::ClosedPolyline(std::move(pts));
}

/// Vertices uniform in [-1, 1]^2; usually self-intersecting.
inline bvp::ClosedPolyline random_polyline(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<bvp::Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
  return bvp::ClosedPolyline(std::move(pts));
}

/// Simple star-shaped polygon: sorted angles, random radii.
inline bvp::ClosedPolyline random_star(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> angle(0.0, bvp::kTwoPi);
  std::uniform_real_distribution<double> radius(0.3, 1.0);
  std::vector<double> th(n);
  for (double& t : th) t = angle(rng);
  std::sort(th.begin(), th.end());
  std::vector<bvp::Vec2> pts;
  for (double t : th) pts.push_back(bvp::polar(radius(rng), t));
  return bvp::ClosedPolyline(std::move(pts));
}

inline bvp::ClosedPolyline figure_eight() {
  return bvp::ClosedPolyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {0, -1}, {-1, -1}, {-1, 0}});
}

}  // namespace testing
