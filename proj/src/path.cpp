#include "bvp/path.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvp/apportion.hpp"

namespace bvp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Path::Path(Shape shape) : shape_(std::move(shape)) {
  std::visit(overloaded{
                 [this](const PolylinePath& p) {
                   if (p.points.empty()) throw std::invalid_argument("polyline path has no points");
                   cumulative_.assign(p.points.size(), 0.0);
                   for (std::size_t i = 1; i < p.points.size(); ++i) {
                     cumulative_[i] = cumulative_[i - 1] + distance(p.points[i - 1], p.points[i]);
                   }
                   length_ = cumulative_.back();
                 },
                 [this](const CircleArcPath& c) {
                   if (!(c.radius >= 0.0)) throw std::invalid_argument("circle arc radius must be >= 0");
                   length_ = c.radius * std::abs(c.phi1 - c.phi0);
                 },
                 [this](const PointPath&) { length_ = 0.0; },
             },
             shape_);
}

Vec2 Path::at(double fraction) const {
  fraction = std::clamp(fraction, 0.0, 1.0);
  return std::visit(
      overloaded{
          [&](const PolylinePath& p) -> Vec2 {
            if (p.points.size() == 1 || length_ == 0.0) return p.points.front();
            if (fraction >= 1.0) return p.points.back();
            if (fraction <= 0.0) return p.points.front();
            const double s = fraction * length_;
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
            std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
            if (i >= cumulative_.size()) return p.points.back();
            const double seg = cumulative_[i] - cumulative_[i - 1];
            const double t = seg > 0.0 ? (s - cumulative_[i - 1]) / seg : 0.0;
            return lerp(p.points[i - 1], p.points[i], t);
          },
          [&](const CircleArcPath& c) -> Vec2 {
            const double phi = c.phi0 + fraction * (c.phi1 - c.phi0);
            return c.center + polar(c.radius, phi);
          },
          [&](const PointPath& p) -> Vec2 { return p.at; },
      },
      shape_);
}

std::size_t Path::corner_count() const {
  if (std::holds_alternative<PolylinePath>(shape_)) {
    std::size_t n = 0;
    for (std::size_t i = 1; i < cumulative_.size(); ++i) {
      if (cumulative_[i] > cumulative_[i - 1]) ++n;
    }
    return std::max<std::size_t>(n, 1);
  }
  return 1;
}

std::vector<double> Path::sample_fractions(std::size_t budget) const {
  std::vector<double> out;
  if (budget == 0) return out;
  out.reserve(budget);
  const auto* poly = std::get_if<PolylinePath>(&shape_);
  if (poly == nullptr || length_ == 0.0) {
    for (std::size_t j = 0; j < budget; ++j) {
      out.push_back(static_cast<double>(j) / static_cast<double>(budget));
    }
    return out;
  }
  std::vector<double> seg_len;
  std::vector<double> seg_start;
  for (std::size_t i = 1; i < cumulative_.size(); ++i) {
    const double len = cumulative_[i] - cumulative_[i - 1];
    if (len > 0.0) {
      seg_len.push_back(len);
      seg_start.push_back(cumulative_[i - 1]);
    }
  }
  if (budget < seg_len.size()) throw std::invalid_argument("sample budget below corner count");
  const auto counts = apportion(seg_len, 1, budget);
  for (std::size_t s = 0; s < seg_len.size(); ++s) {
    for (std::size_t j = 0; j < counts[s]; ++j) {
      const double arclen =
          seg_start[s] + seg_len[s] * static_cast<double>(j) / static_cast<double>(counts[s]);
      out.push_back(arclen / length_);
    }
  }
  return out;
}

}  // namespace bvp
