#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace bvp {

struct DescentOptions {
  double grad_tol = 1e-8;  // on the infinity norm
  std::size_t max_iters = 20000;
  std::size_t memory = 20;
  double armijo = 1e-4;
  double backtrack = 0.5;
  bool record_history = false;
};

struct DescentResult {
  std::size_t iterations = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  bool converged = false;  // gradient tolerance met
  bool stalled = false;    // no representable decrease along steepest descent
  std::vector<double> history;  // energy after each accepted step
};

/// Returns f(x) and writes its gradient into g (same size as x).
using Objective = std::function<double(const std::vector<double>& x, std::vector<double>& g)>;

/// Limited-memory BFGS directions with Armijo backtracking; falls back to
/// steepest descent when the quasi-Newton direction is not a descent direction
/// or its line search fails. Minimizes in place.
DescentResult minimize(const Objective& f, std::vector<double>& x, const DescentOptions& options);

}  // namespace bvp
