#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bvp {

/// Splits `total` items among weighted bins: every bin gets `floor`, the rest
/// go by the D'Hondt divisor rule (ties to the lower index). The rule is
/// house-monotone, so no bin ever loses items when `total` grows. If
/// `total` is below the floors, the floors alone are returned.
std::vector<std::size_t> apportion(std::span<const double> weights, std::size_t floor,
                                   std::size_t total);

}  // namespace bvp
