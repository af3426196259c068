#include "bvp/plateau.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bvp/apportion.hpp"
#include "bvp/mesh.hpp"
#include "bvp/optimize.hpp"
#include "bvp/winding.hpp"

namespace bvp {

double smoothed_jacobian_energy(const DiscreteMap& map, double delta, std::vector<Vec2>* grad) {
  if (grad) grad->assign(map.values.size(), Vec2{0.0, 0.0});
  double e = 0.0;
  for (std::size_t t = 0; t < map.mesh.triangles.size(); ++t) {
    const auto& tri = map.mesh.triangles[t];
    const Vec2 v0 = map.values[tri[0]];
    const Vec2 v1 = map.values[tri[1]];
    const Vec2 v2 = map.values[tri[2]];
    const double a = 0.5 * cross(v1 - v0, v2 - v0);
    const double s = delta * map.mesh.triangle_area(t);
    const double et = std::sqrt(a * a + s * s);
    e += et;
    if (grad && et > 0.0) {
      const double w = 0.5 * a / et;
      (*grad)[tri[0]] = (*grad)[tri[0]] + w * Vec2{v1.y - v2.y, v2.x - v1.x};
      (*grad)[tri[1]] = (*grad)[tri[1]] + w * Vec2{v2.y - v0.y, v0.x - v2.x};
      (*grad)[tri[2]] = (*grad)[tri[2]] + w * Vec2{v0.y - v1.y, v1.x - v0.x};
    }
  }
  return e;
}

DiscreteMap homogeneous_guess(const ClosedPolyline& poly, const TriMesh& mesh) {
  if (mesh.boundary_loop.size() != poly.size())
    throw std::invalid_argument("mesh boundary has " + std::to_string(mesh.boundary_loop.size()) +
                                " vertices but the polyline has " + std::to_string(poly.size()));
  DiscreteMap map{mesh, std::vector<Vec2>(mesh.vertices.size())};
  const std::size_t n = poly.size();
  const Vec2 center = poly.centroid();
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec2 x = mesh.vertices[v];
    if (x.x == 0.0 && x.y == 0.0) {
      map.values[v] = center;
      continue;
    }
    const double s = wrap_angle(std::atan2(x.y, x.x)) / kTwoPi * static_cast<double>(n);
    const std::size_t k = std::min(n - 1, static_cast<std::size_t>(s));
    map.values[v] = lerp(poly.vertex(k), poly.vertex(k + 1), s - static_cast<double>(k));
  }
  for (std::size_t k = 0; k < n; ++k) map.values[mesh.boundary_loop[k]] = poly.vertex(k);
  return map;
}

MinimizeResult jacobian_tv_minimize(const ClosedPolyline& poly, const TriMesh& mesh,
                                    const PlateauOptions& options) {
  const auto& deltas = options.delta_schedule;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0) || (i > 0 && !(deltas[i] < deltas[i - 1])))
      throw std::invalid_argument("delta schedule must be positive and strictly decreasing");
  }
  MinimizeResult res;
  res.map = homogeneous_guess(poly, mesh);

  std::vector<bool> fixed(mesh.vertices.size(), false);
  for (std::size_t id : mesh.boundary_loop) fixed[id] = true;
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    if (!fixed[v]) free.push_back(v);

  std::vector<double> x(2 * free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    x[2 * i] = res.map.values[free[i]].x;
    x[2 * i + 1] = res.map.values[free[i]].y;
  }

  DiscreteMap work = res.map;
  std::vector<Vec2> grad;
  DescentOptions dopt;
  dopt.grad_tol = options.grad_tol;
  dopt.max_iters = options.max_iters;
  dopt.record_history = options.record_history;

  for (double delta : deltas) {
    auto objective = [&](const std::vector<double>& y, std::vector<double>& g) {
      for (std::size_t i = 0; i < free.size(); ++i) work.values[free[i]] = {y[2 * i], y[2 * i + 1]};
      const double e = smoothed_jacobian_energy(work, delta, &grad);
      for (std::size_t i = 0; i < free.size(); ++i) {
        g[2 * i] = grad[free[i]].x;
        g[2 * i + 1] = grad[free[i]].y;
      }
      return e;
    };
    const DescentResult d = minimize(objective, x, dopt);
    res.stages.push_back({delta, d.iterations, d.energy, d.grad_norm, d.converged, d.stalled});
    res.history.insert(res.history.end(), d.history.begin(), d.history.end());
    res.iterations += d.iterations;
    res.grad_norm = d.grad_norm;
    res.converged = d.converged || d.stalled;
  }
  for (std::size_t i = 0; i < free.size(); ++i) res.map.values[free[i]] = {x[2 * i], x[2 * i + 1]};
  res.upper = jacobian_tv(res.map);
  return res;
}

ClosedPolyline refine_polyline(const ClosedPolyline& poly, std::size_t n) {
  const std::size_t m = poly.size();
  if (m == 0 || m >= n || !(poly.length() > 0.0)) return poly;
  std::vector<double> lengths(m);
  for (std::size_t i = 0; i < m; ++i) lengths[i] = distance(poly.vertex(i), poly.vertex(i + 1));
  const auto budget = apportion(lengths, 1, n);
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < budget[i]; ++j)
      pts.push_back(lerp(poly.vertex(i), poly.vertex(i + 1),
                         static_cast<double>(j) / static_cast<double>(budget[i])));
  }
  return ClosedPolyline(std::move(pts));
}

PlateauSolution plateau_solve(const ClosedPolyline& poly, const PlateauOptions& options) {
  if (poly.empty()) throw std::invalid_argument("empty polyline");
  PlateauSolution sol;
  PlateauCertificate& cert = sol.certificate;
  cert.h = options.h;
  cert.delta_schedule = options.delta_schedule;
  const std::size_t n = default_boundary_samples(options.h);

  if (!(poly.length() > 0.0)) {
    sol.boundary = ClosedPolyline(std::vector<Vec2>(n, poly.vertex(0)));
    sol.filler = DiscreteMap{make_disk_mesh(options.h, n), {}};
    sol.filler.values.assign(sol.filler.mesh.vertices.size(), poly.vertex(0));
    cert.boundary_samples = n;
    return sol;
  }

  sol.boundary = refine_polyline(poly, n);
  cert.boundary_samples = sol.boundary.size();
  cert.lower = winding_area(poly);
  MinimizeResult mr = jacobian_tv_minimize(sol.boundary, make_disk_mesh(options.h, sol.boundary.size()), options);
  cert.upper = mr.upper;
  cert.iterations = mr.iterations;
  cert.converged = mr.converged;
  cert.grad_norm = mr.grad_norm;
  cert.relative_gap = cert.lower > 0.0 ? (cert.upper - cert.lower) / cert.lower : 0.0;
  cert.gap_flagged = cert.upper - cert.lower > options.gap_flag * cert.lower + 1e-12;
  sol.filler = std::move(mr.map);
  sol.stages = std::move(mr.stages);
  return sol;
}

PlateauSolution plateau_solve(const Curve& curve, const PlateauOptions& options) {
  CompletedCurve cc = completed_curve(curve, default_boundary_samples(options.h));
  PlateauSolution sol = plateau_solve(cc.polyline, options);
  if (cc.polyline.length() > 0.0 && sol.boundary.size() == cc.polyline.size()) sol.tags = std::move(cc.tags);
  return sol;
}

PlateauCertificate plateau_value(const ClosedPolyline& poly, const PlateauOptions& options) {
  return plateau_solve(poly, options).certificate;
}

PlateauCertificate plateau_value(const Curve& curve, const PlateauOptions& options) {
  return plateau_solve(curve, options).certificate;
}

}  // namespace bvp
