#include "bvp/optimize.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

namespace bvp {

namespace {

using Vec = Eigen::Map<Eigen::VectorXd>;

/// Curvature pairs in a ring buffer; slot (head + i) % capacity is the i-th oldest.
struct Memory {
  Eigen::MatrixXd s, y;
  std::vector<double> rho;
  std::size_t head = 0, count = 0;

  Memory(std::size_t n, std::size_t capacity) : s(n, capacity), y(n, capacity), rho(capacity) {}
  std::size_t slot(std::size_t i) const { return (head + i) % rho.size(); }
  void clear() { head = count = 0; }
  void push(const Eigen::VectorXd& sv, const Eigen::VectorXd& yv, double r) {
    const std::size_t cap = rho.size();
    const std::size_t k = count < cap ? slot(count) : head;
    s.col(k) = sv;
    y.col(k) = yv;
    rho[k] = r;
    if (count < cap) ++count;
    else head = (head + 1) % cap;
  }
};

void two_loop(const Memory& mem, const Eigen::VectorXd& g, Eigen::VectorXd& d) {
  d = g;
  std::vector<double> alpha(mem.count);
  for (std::size_t i = mem.count; i-- > 0;) {
    const std::size_t k = mem.slot(i);
    alpha[i] = mem.rho[k] * mem.s.col(k).dot(d);
    d -= alpha[i] * mem.y.col(k);
  }
  if (mem.count > 0) {
    const std::size_t k = mem.slot(mem.count - 1);
    d *= 1.0 / (mem.rho[k] * mem.y.col(k).squaredNorm());
  }
  for (std::size_t i = 0; i < mem.count; ++i) {
    const std::size_t k = mem.slot(i);
    const double beta = mem.rho[k] * mem.y.col(k).dot(d);
    d += (alpha[i] - beta) * mem.s.col(k);
  }
  d = -d;
}

}  // namespace

DescentResult minimize(const Objective& f, std::vector<double>& x_std, const DescentOptions& opt) {
  DescentResult res;
  const std::size_t n = x_std.size();
  const auto ni = static_cast<Eigen::Index>(n);
  std::vector<double> g_std(n), g_new_std(n), x_new_std(n);
  Vec x(x_std.data(), ni), g(g_std.data(), ni);
  Vec x_new(x_new_std.data(), ni), g_new(g_new_std.data(), ni);
  Eigen::VectorXd d(ni), s(ni), y(ni);
  double fx = f(x_std, g_std);
  Memory mem(n, std::max<std::size_t>(1, opt.memory));

  for (;;) {
    res.grad_norm = n ? g.cwiseAbs().maxCoeff() : 0.0;
    if (res.grad_norm < opt.grad_tol) {
      res.converged = true;
      break;
    }
    if (res.iterations >= opt.max_iters) break;

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool steepest = attempt == 1 || mem.count == 0;
      double t = 1.0;
      if (steepest) {
        d = -g;
        t = std::min(1.0, 1.0 / g.norm());
      } else {
        two_loop(mem, g, d);
      }
      const double slope = g.dot(d);
      if (!(slope < 0.0)) continue;  // not a descent direction: retry steepest
      const double dmax = d.cwiseAbs().maxCoeff();
      const double xmax = x.cwiseAbs().maxCoeff();
      while (t * dmax > 1e-16 * (1.0 + xmax)) {
        x_new = x + t * d;
        const double f_new = f(x_new_std, g_new_std);
        if (f_new <= fx + opt.armijo * t * slope) {
          s = x_new - x;
          y = g_new - g;
          const double sy = s.dot(y);
          if (sy > 1e-12 * s.norm() * y.norm()) mem.push(s, y, 1.0 / sy);
          x = x_new;
          g = g_new;
          fx = f_new;
          accepted = true;
          break;
        }
        t *= opt.backtrack;
      }
      if (!accepted) mem.clear();
    }
    if (!accepted) {
      res.stalled = true;
      break;
    }
    ++res.iterations;
    if (opt.record_history) res.history.push_back(fx);
  }
  res.energy = fx;
  return res;
}

}  // namespace bvp
