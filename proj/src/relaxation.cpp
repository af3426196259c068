#include "bvp/relaxation.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <type_traits>

#include "bvp/mollify.hpp"

namespace bvp {

namespace {

/// Uniform-weight harmonic embedding with the boundary loop pinned to `boundary`.
std::vector<Vec2> tutte_embedding(const TriMesh& mesh, const std::vector<Vec2>& boundary) {
  const std::size_t n = mesh.vertices.size();
  std::vector<long> index(n, -1);
  std::vector<Vec2> pos(n);
  for (std::size_t k = 0; k < mesh.boundary_loop.size(); ++k) pos[mesh.boundary_loop[k]] = boundary[k];
  std::vector<bool> fixed(n, false);
  for (std::size_t id : mesh.boundary_loop) fixed[id] = true;
  long m = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (!fixed[v]) index[v] = m++;
  if (m == 0) return pos;

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& t : mesh.triangles) {
    for (int a = 0; a < 3; ++a) {
      const std::size_t i = t[a], j = t[(a + 1) % 3];
      edges.insert({std::min(i, j), std::max(i, j)});
    }
  }
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd bx = Eigen::VectorXd::Zero(m), by = Eigen::VectorXd::Zero(m);
  std::vector<double> degree(m, 0.0);
  auto couple = [&](std::size_t i, std::size_t j) {
    if (fixed[i]) return;
    degree[index[i]] += 1.0;
    if (fixed[j]) {
      bx[index[i]] += pos[j].x;
      by[index[i]] += pos[j].y;
    } else {
      trip.emplace_back(index[i], index[j], -1.0);
    }
  };
  for (const auto& [i, j] : edges) {
    couple(i, j);
    couple(j, i);
  }
  for (long i = 0; i < m; ++i) trip.emplace_back(i, i, degree[i]);
  Eigen::SparseMatrix<double> L(m, m);
  L.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Tutte system factorization failed");
  const Eigen::VectorXd x = solver.solve(bx);
  const Eigen::VectorXd y = solver.solve(by);
  for (std::size_t v = 0; v < n; ++v)
    if (!fixed[v]) pos[v] = {x[index[v]], y[index[v]]};
  return pos;
}

std::vector<double> ring_radii(double inner, double outer, double h) {
  std::vector<double> gaps;
  for (int i = kGradedRings; i >= 1; --i) gaps.push_back(h * outer * std::pow(kGradingFactor, i));
  double graded = 0.0;
  for (double g : gaps) graded += g;
  const double total = outer - inner;
  if (graded > 0.5 * total) {
    for (double& g : gaps) g *= 0.5 * total / graded;
    graded = 0.5 * total;
  }
  const double rest = total - graded;
  const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rest / (h * outer))));
  std::vector<double> radii{inner};
  for (double g : gaps) radii.push_back(radii.back() + g);
  for (std::size_t i = 1; i < m; ++i) radii.push_back(inner + graded + rest * static_cast<double>(i) / static_cast<double>(m));
  radii.push_back(outer);
  return radii;
}

}  // namespace

RecoveryMap recovery_sequence(const Curve& curve, const ExtensionParams& params, int k,
                              const PlateauSolution& filler, double h) {
  check_params(params);
  if (k < 2) throw std::invalid_argument("recovery index k must be >= 2");
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("mesh size h must lie in (0, 1)");
  const double ell = params.radius;
  const TriMesh& fm = filler.filler.mesh;
  const std::size_t nb = fm.boundary_loop.size();
  RecoveryMap out{};

  if (total_variation(curve).total == 0.0) {
    out.map = DiscreteMap{fm.scaled(ell), filler.filler.values};
    out.inner_triangles = fm.triangles.size();
    return out;
  }
  if (curve.open_seam()) throw std::domain_error("recovery sequences need a closed datum (open seam)");
  if (filler.tags.size() != nb || filler.boundary.size() != nb)
    throw std::invalid_argument("filler boundary does not match the completed curve of the datum");
  const auto& pieces = curve.pieces();
  for (std::size_t j = 0; j < nb; ++j) {
    const VertexTag& tag = filler.tags[j];
    if (tag.piece >= pieces.size())
      throw std::invalid_argument("filler boundary vertex " + std::to_string(j) + " has no piece in the datum");
    const Vec2 expected = std::visit(
        [&](const auto& p) -> Vec2 {
          if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Arc>) return p.path.at(tag.fraction);
          else return lerp(p.left, p.right, tag.fraction);
        },
        pieces[tag.piece]);
    const Vec2 got = filler.filler.values[fm.boundary_loop[j]];
    if (!(got == filler.boundary.vertex(j)) || distance(got, expected) > 1e-9 * std::max(1.0, norm(expected)))
      throw std::invalid_argument("filler boundary vertex " + std::to_string(j) + " is not on the completed curve");
  }

  const LipschitzCurve phi = mollify_sequence(curve, k);
  std::vector<double> theta(nb);
  for (std::size_t j = 0; j < nb; ++j) theta[j] = phi.angle_of(filler.tags[j].piece, filler.tags[j].fraction);
  for (std::size_t j = 1; j < nb; ++j) theta[j] = theta[0] + wrap_angle(theta[j] - theta[0]);
  for (std::size_t j = 1; j < nb; ++j) {
    if (!(theta[j] > theta[j - 1]))
      throw std::invalid_argument("filler boundary vertices are not in datum order");
  }

  const double r0 = ell / static_cast<double>(k);
  std::vector<Vec2> pinned(nb);
  for (std::size_t j = 0; j < nb; ++j) pinned[j] = polar(r0, theta[j]);

  TriMesh mesh;
  mesh.radius = ell;
  mesh.vertices = tutte_embedding(fm, pinned);
  mesh.triangles = fm.triangles;
  std::vector<Vec2> values = filler.filler.values;
  out.inner_triangles = mesh.triangles.size();
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (!(mesh.triangle_area(t) > 0.0)) throw std::runtime_error("re-embedded filler has an inverted triangle");
  }

  // Rays: the filler's boundary angles plus fill-ins so that no gap exceeds h.
  struct Ray {
    double angle;
    Vec2 value;
    std::size_t inner_id;  // vertex on the circle of radius r0
  };
  std::vector<Ray> rays;
  std::vector<std::size_t> caps_begin;
  for (std::size_t j = 0; j < nb; ++j) {
    rays.push_back({theta[j], values[fm.boundary_loop[j]], fm.boundary_loop[j]});
    const double next = j + 1 < nb ? theta[j + 1] : theta[0] + kTwoPi;
    const double gap = next - theta[j];
    const auto extra = static_cast<std::size_t>(std::ceil(gap / h)) - 1;
    const std::size_t p = mesh.vertices.size();
    for (std::size_t e = 1; e <= extra; ++e) {
      const double a = theta[j] + gap * static_cast<double>(e) / static_cast<double>(extra + 1);
      mesh.vertices.push_back(polar(r0, a));
      values.push_back(phi.value(a));
      rays.push_back({a, values.back(), mesh.vertices.size() - 1});
    }
    // Ear fan from the filler vertex over the arc between two chord ends.
    const std::size_t q = fm.boundary_loop[(j + 1) % nb];
    for (std::size_t e = 0; e < extra; ++e) {
      const std::size_t b = p + e;
      const std::size_t c = e + 1 < extra ? p + e + 1 : q;
      mesh.triangles.push_back({fm.boundary_loop[j], b, c});
    }
  }
  out.cap_triangles = mesh.triangles.size() - out.inner_triangles;

  const std::vector<double> radii = ring_radii(r0, ell, h);
  std::vector<std::size_t> prev(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) prev[i] = rays[i].inner_id;
  for (std::size_t ring = 1; ring < radii.size(); ++ring) {
    std::vector<std::size_t> cur(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      mesh.vertices.push_back(ring + 1 == radii.size() ? Vec2{ell * std::cos(rays[i].angle), ell * std::sin(rays[i].angle)}
                                                         : polar(radii[ring], rays[i].angle));
      values.push_back(rays[i].value);
      cur[i] = mesh.vertices.size() - 1;
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const std::size_t i1 = (i + 1) % rays.size();
      mesh.triangles.push_back({prev[i], cur[i], cur[i1]});
      mesh.triangles.push_back({prev[i], cur[i1], prev[i1]});
    }
    prev = std::move(cur);
  }
  mesh.boundary_loop = prev;
  for (const Ray& r : rays) out.ray_angles.push_back(r.angle);
  out.map = DiscreteMap{std::move(mesh), std::move(values)};
  return out;
}

bool SequenceReport::passed() const {
  return tv_never_exceeds && tv_nondecreasing && l1_nonincreasing && tv_converged && l1_converged &&
         area_converged && jacobian_preserved;
}

SequenceReport strict_convergence_report(const Curve& curve, const ExtensionParams& params,
                                         const std::vector<int>& ks, const PlateauSolution& filler,
                                         double h, const SequenceTolerances& tol) {
  check_params(params);
  if (ks.empty()) throw std::invalid_argument("need at least one k");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 2 || (i > 0 && ks[i] <= ks[i - 1])) throw std::invalid_argument("ks must be increasing and >= 2");
  }
  const double ell = params.radius;
  SequenceReport rep;
  rep.tolerances = tol;
  rep.tv_target = ell * total_variation(curve).total;
  rep.filler_jacobian_tv = jacobian_tv(filler.filler);
  rep.relaxed = relaxed_area(curve, params, filler.certificate);

  for (int k : ks) {
    const LipschitzCurve phi = mollify_sequence(curve, k);
    rep.ks.push_back(k);
    // Both maps are constant along rays, so the radial integral is ell^2 / 2.
    rep.l1_errors.push_back(0.5 * ell * ell * angular_l1_distance(curve, phi));
    rep.tv_values.push_back(ell * phi.total_variation());
    const RecoveryMap v = recovery_sequence(curve, params, k, filler, h);
    rep.area_values.push_back(area_functional(v.map));
    rep.jacobian_tv_values.push_back(jacobian_tv(v.map));
  }
  const double slack = 1e-12 * std::max(1.0, rep.tv_target);
  for (std::size_t i = 0; i < rep.ks.size(); ++i) {
    if (rep.tv_values[i] > rep.tv_target + slack) rep.tv_never_exceeds = false;
    if (i > 0 && rep.tv_values[i] < rep.tv_values[i - 1] - slack) rep.tv_nondecreasing = false;
    if (i > 0 && rep.l1_errors[i] > rep.l1_errors[i - 1]) rep.l1_nonincreasing = false;
    const double jref = rep.filler_jacobian_tv;
    if (std::abs(rep.jacobian_tv_values[i] - jref) > tol.jacobian_rel * std::max(jref, 1e-300) &&
        std::abs(rep.jacobian_tv_values[i] - jref) > 1e-12)
      rep.jacobian_preserved = false;
  }
  rep.tv_converged = std::abs(rep.tv_values.back() - rep.tv_target) <= tol.tv_rel * std::max(rep.tv_target, 1e-300) ||
                     rep.tv_target == rep.tv_values.back();
  rep.l1_converged = rep.l1_errors.back() <= tol.l1_abs;
  const double lower = rep.relaxed.relaxed_area_lower;
  rep.area_converged = std::abs(rep.area_values.back() - lower) <= tol.area_rel * lower;
  return rep;
}

SliceReport slicing_check(const Curve& curve, const ExtensionParams& params, double eps,
                          std::size_t n_radii) {
  check_params(params);
  const double ell = params.radius;
  if (!(eps >= 0.0 && eps < ell)) throw std::domain_error("need 0 <= eps < radius");
  if (n_radii == 0) throw std::invalid_argument("need at least one radius");

  // Jump atoms in angle order, angles unwrapped from the origin.
  struct Atom {
    double angle;
    Vec2 left, right;
  };
  std::vector<Atom> atoms;
  const double origin = curve.origin();
  for (const Piece& p : curve.pieces()) {
    if (const auto* j = std::get_if<Jump>(&p)) {
      // A jump at the origin is crossed when the circle closes, at origin + 2pi.
      const double a = wrap_angle(j->theta - origin);
      atoms.push_back({origin + (a == 0.0 ? kTwoPi : a), j->left, j->right});
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.angle < b.angle; });

  SliceReport rep;
  rep.exact = tangential_variation(curve, eps, params);
  const double dr = (ell - eps) / static_cast<double>(n_radii);
  for (std::size_t i = 0; i < n_radii; ++i) {
    const double r = eps + (static_cast<double>(i) + 0.5) * dr;
    const auto m = std::max<std::size_t>(
        16, static_cast<std::size_t>(std::ceil(kTwoPi * r * static_cast<double>(n_radii) / (ell - eps))));
    double tv = 0.0;
    Vec2 last = curve.evaluate(origin, Side::right);
    std::size_t a = 0;
    for (std::size_t s = 1; s <= m; ++s) {
      const double th = s == m ? origin + kTwoPi : origin + kTwoPi * static_cast<double>(s) / static_cast<double>(m);
      bool atom_here = false;
      for (; a < atoms.size() && atoms[a].angle <= th; ++a) {
        tv += distance(last, atoms[a].left) + distance(atoms[a].left, atoms[a].right);
        last = atoms[a].right;
        atom_here = atoms[a].angle == th;
      }
      if (s == m && atom_here) break;
      const Vec2 v = curve.evaluate(th, s == m ? Side::left : Side::right);
      tv += distance(last, v);
      last = v;
    }
    rep.radii.push_back(r);
    rep.slice_tv.push_back(tv);
    rep.samples.push_back(m);
    rep.integrated += tv * dr;
  }
  rep.relative_error = rep.exact == 0.0 ? (rep.integrated == 0.0 ? 0.0 : 1.0)
                                        : std::abs(rep.integrated - rep.exact) / rep.exact;
  return rep;
}

}  // namespace bvp
