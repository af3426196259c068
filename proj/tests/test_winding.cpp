#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bvp/predicates.hpp"
#include "bvp/winding.hpp"
#include "support.hpp"

using namespace bvp;
using std::numbers::pi;

namespace {

ClosedPolyline transformed(const ClosedPolyline& p, double angle, Vec2 shift, double scale = 1.0) {
  std::vector<Vec2> pts;
  const double c = std::cos(angle), s = std::sin(angle);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 v = p.vertex(i);
    pts.push_back(Vec2{scale * (c * v.x - s * v.y), scale * (s * v.x + c * v.y)} + shift);
  }
  return ClosedPolyline(std::move(pts));
}

ClosedPolyline scaled(const ClosedPolyline& p, double c) {
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < p.size(); ++i) pts.push_back(c * p.vertex(i));
  return ClosedPolyline(std::move(pts));
}

// Oracle: brute-force sampling on a fine regular grid (cell centers).
double grid_count(const ClosedPolyline& p, double x0, double x1, double y0, double y1, int n) {
  double sum = 0.0;
  const double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) sum += std::abs(winding_number(p, {x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy}));
  }
  return sum * dx * dy;
}

}  // namespace

TEST_CASE("orientation predicate is exact") {
  CHECK(orient2d({0, 0}, {1, 0}, {0.5, 1e-300}) == 1);
  CHECK(orient2d({0, 0}, {1, 0}, {0.5, -1e-300}) == -1);
  // Nearly collinear points that fool naive evaluation.
  const Vec2 a{0.5, 0.5}, b{12.0, 12.0}, c{24.0, 24.0};
  CHECK(orient2d(a, b, c) == 0);
  const Vec2 d{0.5 + std::ldexp(1.0, -52), 0.5};
  CHECK(orient2d(d, b, c) == -orient2d(b, d, c));
}

TEST_CASE("winding numbers") {
  const auto circle = testing::regular_ngon(256);
  CHECK(winding_number(circle, {0, 0}) == 1);
  CHECK(winding_number(circle, {2, 0}) == 0);
  CHECK(winding_number_angle(circle, {0, 0}) == 1);
  CHECK(winding_number_angle(circle, {2, 0}) == 0);

  std::vector<Vec2> twice;
  for (int lap = 0; lap < 2; ++lap) {
    for (std::size_t i = 0; i < 64; ++i) twice.push_back(polar(1.0, kTwoPi * i / 64.0));
  }
  const ClosedPolyline doubled(twice);
  CHECK(winding_number(doubled, {0, 0}) == 2);
  CHECK(winding_number_angle(doubled, {0, 0}) == 2);
  CHECK(winding_number(circle.reversed(), {0.1, 0.2}) == -1);

  const auto eight = testing::figure_eight();
  CHECK(winding_number(eight, {0.5, 0.5}) == 1);
  CHECK(winding_number(eight, {-0.5, -0.5}) == -1);
  CHECK(winding_number(eight, {0.5, -0.5}) == 0);
}

TEST_CASE("both winding methods agree on random curves") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int c = 0; c < 30; ++c) {
    const auto poly = testing::random_polyline(rng, 5 + c % 17);
    for (int k = 0; k < 200; ++k) {
      const Vec2 p{u(rng), u(rng)};
      CHECK(winding_number(poly, p) == winding_number_angle(poly, p));
    }
  }
}

TEST_CASE("points on the curve are rejected with a distance diagnostic") {
  const ClosedPolyline square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK_THROWS_AS(winding_number(square, {1, 1}), PointOnCurveError);
  try {
    winding_number(square, {0.5, 1e-14});
    FAIL("expected rejection");
  } catch (const PointOnCurveError& e) {
    CHECK(e.segment() == 0);
    CHECK(e.distance() == doctest::Approx(1e-14));
  }
  CHECK_THROWS_AS(winding_number_angle(square, {0.0, 0.25}), PointOnCurveError);
  CHECK(winding_number(square, {0.5, 1e-9}) == 1);
}

TEST_CASE("winding area of regular polygons is exact") {
  for (std::size_t n = 3; n <= 64; ++n) {
    const double expected = 0.5 * n * std::sin(kTwoPi / n);
    CHECK(std::abs(winding_area(testing::regular_ngon(n)) - expected) < 1e-12);
  }
  CHECK(std::abs(winding_area(testing::regular_ngon(6)) - 3.0 * std::sin(pi / 3.0)) < 1e-12);
  CHECK(winding_area(testing::regular_ngon(4096)) == doctest::Approx(pi).epsilon(1e-5));
}

TEST_CASE("figure eight of opposite squares has winding area two") {
  const auto eight = testing::figure_eight();
  CHECK(std::abs(winding_area(eight) - 2.0) < 1e-12);
  CHECK(std::abs(eight.signed_area()) < 1e-15);
  CHECK(grid_count(eight, -1, 1, -1, 1, 200) == doctest::Approx(2.0).epsilon(1e-12));
  const Arrangement arr = build_arrangement(eight);
  int bounded = 0;
  for (const Face& f : arr.faces) {
    if (f.unbounded) {
      CHECK(f.winding == 0);
      continue;
    }
    ++bounded;
    CHECK(std::abs(f.winding) == 1);
    CHECK(f.area == doctest::Approx(1.0));
  }
  CHECK(bounded == 2);
}

TEST_CASE("degenerate curves") {
  CHECK(winding_area(ClosedPolyline({{0.3, 0.4}})) == 0.0);
  CHECK(winding_area(ClosedPolyline()) == 0.0);
  CHECK(winding_area(ClosedPolyline({{0, 0}, {1, 0}})) == 0.0);
  CHECK(winding_area_grid(ClosedPolyline(), 16).value == 0.0);
}

TEST_CASE("overlaps and spikes") {
  // The square traversed twice.
  const ClosedPolyline twice({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(winding_area(twice) == doctest::Approx(2.0).epsilon(1e-15));
  // A spike walked out and back along one edge.
  const ClosedPolyline spike({{0, 0}, {1, 0}, {2, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(winding_area(spike) == doctest::Approx(1.0).epsilon(1e-15));
  // Collinear partial overlap between non-adjacent edges.
  const ClosedPolyline overlap({{0, 0}, {3, 0}, {3, 1}, {2, 1}, {2, 0}, {1, 0}, {1, -1}, {0, -1}});
  CHECK(winding_area(overlap) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(grid_count(overlap, 0, 3, -1, 1, 300) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("simple polygons match the shoelace area") {
  std::mt19937_64 rng(5);
  for (int c = 0; c < 40; ++c) {
    const auto star = testing::random_star(rng, 3 + c);
    const double shoelace = std::abs(star.signed_area());
    CHECK(std::abs(winding_area(star) - shoelace) <= 1e-12 * shoelace);
  }
}

TEST_CASE("arrangement faces are consistent with the shoelace integral") {
  std::mt19937_64 rng(17);
  for (int c = 0; c < 50; ++c) {
    const auto poly = testing::random_polyline(rng, 4 + c % 20);
    const Arrangement arr = build_arrangement(poly);
    double weighted = 0.0;
    for (const Face& f : arr.faces) weighted += f.winding * f.area;
    CHECK(weighted == doctest::Approx(poly.signed_area()).epsilon(1e-10));
  }
}

TEST_CASE("grid oracle") {
  const ClosedPolyline square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto sq = winding_area_grid(square, 512);
  CHECK(std::abs(sq.value - 1.0) < 0.01);
  const auto hex = winding_area_grid(testing::regular_ngon(6), 512);
  CHECK(std::abs(hex.value - 2.598076211353316) < 0.01);

  for (std::size_t n = 3; n <= 64; n += 1) {
    const auto poly = testing::regular_ngon(n);
    const auto est = winding_area_grid(poly, 128, n);
    CHECK(std::abs(est.value - winding_area(poly)) <= 3.0 * est.standard_error);
  }
  const auto eight = winding_area_grid(testing::figure_eight(), 256);
  CHECK(std::abs(eight.value - 2.0) <= 3.0 * eight.standard_error);

  std::mt19937_64 rng(23);
  for (int c = 0; c < 20; ++c) {
    const auto poly = testing::random_polyline(rng, 6 + c);
    const auto est = winding_area_grid(poly, 128, 1000 + c);
    CHECK(std::abs(est.value - winding_area(poly)) <= 3.0 * est.standard_error);
  }
}

TEST_CASE("winding area invariances") {
  std::mt19937_64 rng(29);
  for (int c = 0; c < 20; ++c) {
    const auto poly = testing::random_polyline(rng, 5 + c);
    const double a = winding_area(poly);
    for (std::size_t s = 1; s < poly.size(); ++s) CHECK(winding_area(poly.rotated(s)) == a);
    CHECK(winding_area(poly.reversed()) == a);
    CHECK(winding_area(scaled(poly, 2.0)) == 4.0 * a);
    CHECK(winding_area(scaled(poly, 0.3)) == doctest::Approx(0.09 * a).epsilon(1e-12));
    CHECK(winding_area(transformed(poly, 0.7, {5.0, -3.0})) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("winding area ignores vertex-preserving reparametrization") {
  // Integer coordinates keep inserted midpoints exactly collinear.
  const ClosedPolyline base({{0, 0}, {4, 0}, {4, 4}, {1, 4}, {1, -2}, {3, -2}, {3, 2}, {0, 2}});
  const double a = winding_area(base);
  std::vector<Vec2> dense;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Vec2 p = base.vertex(i), q = base.vertex(i + 1);
    dense.push_back(p);
    dense.push_back(p);  // dwell
    for (int k = 1; k < 4; ++k) dense.push_back(lerp(p, q, k / 4.0));
  }
  CHECK(winding_area(ClosedPolyline(dense)) == a);
  CHECK(a == doctest::Approx(grid_count(base, 0, 4, -2, 4, 600)).epsilon(1e-9));
}

TEST_CASE("nearly collinear overlaps after rotation") {
  // Four points on one line traversed back and forth; rotating makes them
  // collinear only up to rounding.
  const ClosedPolyline line({{1, 4}, {4, 4}, {-3, 4}, {0, 4}});
  CHECK(winding_area(line) == 0.0);
  CHECK(winding_area(transformed(line, 0.28026751908882153, {0.37, -1.1})) == doctest::Approx(0.0).scale(1.0));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int c = 0; c < 600; ++c) {
    std::uniform_int_distribution<int> u(-(1 << (c % 4)), 1 << (c % 4));
    std::vector<Vec2> pts;
    for (int j = 0; j < 4 + c % 25; ++j) pts.push_back({double(u(rng)), double(u(rng))});
    const ClosedPolyline poly(pts);
    const double a = winding_area(poly);
    CAPTURE(c);
    CHECK(winding_area(transformed(poly, angle(rng), {0.37, -1.1})) == doctest::Approx(a).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("inserted points on edges of degenerate curves leave the area unchanged") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int c = 0; c < 200; ++c) {
    std::vector<Vec2> pts, dense;
    for (int j = 0; j < 4 + c % 15; ++j) pts.push_back({double(u(rng)), double(u(rng))});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec2 p = pts[i], q = pts[(i + 1) % pts.size()];
      dense.push_back(p);
      dense.push_back(p);
      for (double t : {0.125, 0.5, 0.75}) dense.push_back(lerp(p, q, t));
    }
    CAPTURE(c);
    CHECK(winding_area(ClosedPolyline(dense)) == winding_area(ClosedPolyline(pts)));
  }
}
