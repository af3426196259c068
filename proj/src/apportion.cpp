#include "bvp/apportion.hpp"

#include <queue>
#include <tuple>

namespace bvp {

std::vector<std::size_t> apportion(std::span<const double> weights, std::size_t floor,
                                   std::size_t total) {
  std::vector<std::size_t> counts(weights.size(), floor);
  const std::size_t base = floor * weights.size();
  if (total <= base) return counts;

  // D'Hondt quotient weight / (extra + 1); ties resolved to the lower index.
  using Entry = std::tuple<double, std::size_t>;
  auto cmp = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) > std::get<1>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
  std::vector<std::size_t> extra(weights.size(), 0);
  bool any_positive = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      queue.emplace(weights[i], i);
      any_positive = true;
    }
  }
  if (!any_positive) return counts;

  for (std::size_t left = total - base; left > 0; --left) {
    auto [q, i] = queue.top();
    queue.pop();
    ++extra[i];
    ++counts[i];
    queue.emplace(weights[i] / static_cast<double>(extra[i] + 1), i);
  }
  return counts;
}

}  // namespace bvp
