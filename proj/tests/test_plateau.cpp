#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bvp/completion.hpp"
#include "bvp/curve_io.hpp"
#include "bvp/mesh.hpp"
#include "bvp/plateau.hpp"
#include "bvp/winding.hpp"
#include "support.hpp"

using namespace bvp;
using std::numbers::pi;

TEST_CASE("smoothed energy gradient matches central differences") {
  const auto poly = testing::regular_ngon(40);
  DiscreteMap map = homogeneous_guess(poly, make_disk_mesh(0.15, 40));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (Vec2& v : map.values) v = v + Vec2{noise(rng), noise(rng)};
  for (double delta : {0.1, 1e-3}) {
    std::vector<Vec2> g;
    smoothed_jacobian_energy(map, delta, &g);
    for (std::size_t i = 0; i < map.values.size(); i += 7) {
      for (int c = 0; c < 2; ++c) {
        DiscreteMap p = map;
        const double step = 1e-6;
        (c ? p.values[i].y : p.values[i].x) += step;
        const double ep = smoothed_jacobian_energy(p, delta);
        (c ? p.values[i].y : p.values[i].x) -= 2 * step;
        const double em = smoothed_jacobian_energy(p, delta);
        CHECK((ep - em) / (2 * step) == doctest::Approx(c ? g[i].y : g[i].x).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("smoothed energy overshoots the Jacobian variation by at most delta times the area") {
  const auto poly = testing::regular_ngon(63);
  const DiscreteMap map = homogeneous_guess(poly, make_disk_mesh(0.1, 63));
  const double e0 = jacobian_tv(map);
  CHECK(smoothed_jacobian_energy(map, 0.0) == doctest::Approx(e0).epsilon(1e-14));
  for (double delta : {1e-1, 1e-2, 1e-3}) {
    const double e = smoothed_jacobian_energy(map, delta);
    CHECK(e >= e0);
    CHECK(e <= e0 + delta * pi);
  }
}

TEST_CASE("homogeneous guess") {
  const auto poly = testing::regular_ngon(32);
  const TriMesh mesh = make_disk_mesh(0.2, 32);
  const DiscreteMap map = homogeneous_guess(poly, mesh);
  for (std::size_t k = 0; k < 32; ++k) CHECK(map.values[mesh.boundary_loop[k]] == poly.vertex(k));
  CHECK(map.values[0] == poly.centroid());
  CHECK_THROWS_AS(homogeneous_guess(poly, make_disk_mesh(0.2, 33)), std::invalid_argument);
}

TEST_CASE("schedule validation") {
  const auto poly = testing::regular_ngon(16);
  const TriMesh mesh = make_disk_mesh(0.3, 16);
  PlateauOptions o;
  o.delta_schedule = {1e-2, 1e-1};
  CHECK_THROWS_AS(jacobian_tv_minimize(poly, mesh, o), std::invalid_argument);
  o.delta_schedule = {1e-1, 1e-1};
  CHECK_THROWS_AS(jacobian_tv_minimize(poly, mesh, o), std::invalid_argument);
  o.delta_schedule = {1e-1, 0.0};
  CHECK_THROWS_AS(jacobian_tv_minimize(poly, mesh, o), std::invalid_argument);
}

TEST_CASE("identity datum") {
  PlateauOptions o;
  o.h = 0.05;
  const PlateauCertificate c = plateau_value(builtin_curve("vortex"), o);
  const std::size_t n = default_boundary_samples(0.05);
  CHECK(c.boundary_samples == n);
  CHECK(c.lower == doctest::Approx(0.5 * n * std::sin(kTwoPi / n)).epsilon(1e-12));
  CHECK(std::abs(c.lower - pi) < 2e-3);
  CHECK(c.upper >= c.lower - 1e-9);
  CHECK(c.upper <= 1.05 * pi);
  CHECK(c.converged);
  CHECK_FALSE(c.gap_flagged);
}

TEST_CASE("triangle datum") {
  PlateauOptions o;
  o.h = 0.05;
  const PlateauCertificate c = plateau_value(builtin_curve("triple"), o);
  const double tri = std::sqrt(3.0) / 4.0;
  CHECK(c.lower == doctest::Approx(tri).epsilon(1e-12));
  CHECK(c.upper >= c.lower - 1e-9);
  CHECK(c.upper <= 1.05 * tri);
}

TEST_CASE("constant datum") {
  PlateauOptions o;
  o.h = 0.1;
  const PlateauSolution s = plateau_solve(builtin_curve("constant"), o);
  CHECK(s.certificate.lower == 0.0);
  CHECK(s.certificate.upper == 0.0);
  CHECK(jacobian_tv(s.filler) == 0.0);
  for (Vec2 v : s.filler.values) CHECK(v == s.filler.values[0]);
}

TEST_CASE("descent is monotone and boundary values stay fixed") {
  const auto poly = testing::figure_eight();
  const ClosedPolyline refined = refine_polyline(poly, 48);
  const TriMesh mesh = make_disk_mesh(0.15, refined.size());
  PlateauOptions o;
  o.max_iters = 400;
  o.record_history = true;
  const MinimizeResult r = jacobian_tv_minimize(refined, mesh, o);
  REQUIRE(r.stages.size() == 4);
  std::size_t at = 0;
  for (const StageReport& s : r.stages) {
    for (std::size_t i = 1; i < s.iterations; ++i) CHECK(r.history[at + i] <= r.history[at + i - 1]);
    at += s.iterations;
  }
  CHECK(at == r.history.size());
  for (std::size_t k = 0; k < refined.size(); ++k) {
    const Vec2 v = r.map.values[mesh.boundary_loop[k]];
    CHECK(v.x == refined.vertex(k).x);
    CHECK(v.y == refined.vertex(k).y);
  }
  CHECK(r.upper >= winding_area(poly) - 1e-9);
}

TEST_CASE("refinement keeps vertices and geometry") {
  const auto poly = testing::figure_eight();
  const ClosedPolyline r = refine_polyline(poly, 50);
  CHECK(r.size() == 50);
  CHECK(r.length() == doctest::Approx(poly.length()).epsilon(1e-14));
  CHECK(winding_area(r) == doctest::Approx(winding_area(poly)).epsilon(1e-12));
  std::size_t found = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r.vertex(j) == poly.vertex(i)) {
        ++found;
        break;
      }
    }
  }
  CHECK(found == poly.size());
  CHECK(refine_polyline(r, 20).size() == 50);
}

TEST_CASE("degree lower bound on builtins and random polylines") {
  PlateauOptions o;
  o.h = 0.2;
  o.max_iters = 2000;
  for (const std::string& name : builtin_names()) {
    CAPTURE(name);
    const PlateauCertificate c = plateau_value(builtin_curve(name), o);
    CHECK(c.upper >= c.lower - 1e-9);
  }
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(3, 12);
  for (int i = 0; i < 50; ++i) {
    const ClosedPolyline p = i % 2 ? testing::random_polyline(rng, size(rng)) : testing::random_star(rng, size(rng));
    CAPTURE(i);
    const PlateauCertificate c = plateau_value(p, o);
    CHECK(c.lower >= 0.0);
    CHECK(c.upper >= c.lower - 1e-9);
  }
}
