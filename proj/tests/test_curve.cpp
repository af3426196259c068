#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bvp/apportion.hpp"
#include "bvp/completion.hpp"
#include "bvp/curve.hpp"
#include "bvp/curve_io.hpp"
#include "bvp/mollify.hpp"

using namespace bvp;
using std::numbers::pi;

namespace {

Arc constant_arc(double t0, double t1, Vec2 at) {
  Arc a;
  a.theta0 = t0;
  a.theta1 = t1;
  a.path = Path::point(at);
  return a;
}

ValidationError::Code error_code(std::vector<Piece> pieces) {
  try {
    validate(std::move(pieces));
  } catch (const ValidationError& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ValidationError::Code::malformed;
}

// Half circle traversed a.c. on [0, pi), then a jump back across the diameter.
Curve half_disk_curve() {
  Arc top;
  top.theta0 = 0.0;
  top.theta1 = pi;
  top.path = Path(CircleArcPath{{0, 0}, 1.0, 0.0, pi});
  top.ac = CumulativeVariation::linear(pi);
  return validate({top, Jump{pi, {-1, 0}, {1, 0}}, constant_arc(pi, kTwoPi, {1, 0})});
}

}  // namespace

TEST_CASE("constant curve validates with zero variation") {
  const Curve c = validate({constant_arc(0.0, kTwoPi, {0.3, -2.0})});
  const auto tv = total_variation(c);
  CHECK(tv.ac_mass == 0.0);
  CHECK(tv.jump_mass == 0.0);
  CHECK(tv.cantor_mass == 0.0);
  CHECK(tv.total == 0.0);
  CHECK_FALSE(c.open_seam());
}

TEST_CASE("validation errors") {
  SUBCASE("interior gap without a jump") {
    CHECK(error_code({constant_arc(0.0, pi, {0, 0}), constant_arc(pi, kTwoPi, {0.5, 0})}) ==
          ValidationError::Code::trace_discontinuity);
  }
  SUBCASE("overlap") {
    CHECK(error_code({constant_arc(0.0, 4.0, {0, 0}), constant_arc(3.0, kTwoPi, {0, 0})}) ==
          ValidationError::Code::overlapping_intervals);
  }
  SUBCASE("gap in the tiling") {
    CHECK(error_code({constant_arc(0.0, 3.0, {0, 0}), constant_arc(3.5, kTwoPi, {0, 0})}) ==
          ValidationError::Code::interval_gap);
  }
  SUBCASE("zero jump") {
    CHECK(error_code({constant_arc(0.0, pi, {0, 0}), Jump{pi, {0, 0}, {0, 0}},
                      constant_arc(pi, kTwoPi, {0, 0})}) == ValidationError::Code::zero_length_jump);
  }
  SUBCASE("nonmonotone samples carry the field") {
    Arc a;
    a.theta0 = 0.0;
    a.theta1 = kTwoPi;
    a.path = Path::segment({0, 0}, {1, 0});
    a.cantor = CumulativeVariation::sampled({0.0, 0.6, 0.5, 1.0});
    try {
      validate({a});
      FAIL("expected failure");
    } catch (const ValidationError& e) {
      CHECK(e.code() == ValidationError::Code::nonmonotone_samples);
      CHECK(e.field() == "pieces[0].cantor.samples[2]");
    }
  }
  SUBCASE("allocation must match path length") {
    Arc a;
    a.theta0 = 0.0;
    a.theta1 = kTwoPi;
    a.path = Path::segment({0, 0}, {1, 0});
    a.ac = CumulativeVariation::linear(0.5);
    CHECK(error_code({a}) == ValidationError::Code::allocation_mismatch);
  }
}

TEST_CASE("total variation of the builtins") {
  const auto vortex = total_variation(builtin_curve("vortex"));
  CHECK(vortex.ac_mass == doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK(vortex.jump_mass == 0.0);
  CHECK(vortex.total == doctest::Approx(kTwoPi).epsilon(1e-14));

  const auto triple = total_variation(builtin_curve("triple"));
  CHECK(triple.ac_mass == 0.0);
  CHECK(triple.cantor_mass == 0.0);
  CHECK(triple.jump_mass == doctest::Approx(3.0).epsilon(1e-14));

  const auto cantor = total_variation(builtin_curve("cantor-arc"));
  CHECK(cantor.ac_mass == 0.0);
  CHECK(cantor.jump_mass == 0.0);
  CHECK(cantor.cantor_mass == pi / 2);
  CHECK(cantor.total == cantor.ac_mass + cantor.jump_mass + cantor.cantor_mass);
}

TEST_CASE("total variation is invariant under origin rotation and rigid motion") {
  const double shift = 0.7;
  const double r = 1.0 / std::sqrt(3.0);
  const double rot = 0.4;
  const Vec2 offset{3.0, -1.0};
  auto vertex = [&](int i) {
    const Vec2 p = polar(r, pi / 2 + kTwoPi * i / 3.0);
    return Vec2{std::cos(rot) * p.x - std::sin(rot) * p.y, std::sin(rot) * p.x + std::cos(rot) * p.y} + offset;
  };
  std::vector<Piece> pieces;
  for (int i = 0; i < 3; ++i) {
    const double t0 = wrap_angle(shift + kTwoPi * i / 3.0);
    const double t1 = wrap_angle(shift + kTwoPi * (i + 1) / 3.0);
    pieces.emplace_back(constant_arc(t0, t1, vertex(i)));
    pieces.emplace_back(Jump{t1, vertex(i), vertex((i + 1) % 3)});
  }
  CHECK(total_variation(validate(pieces)).total == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("evaluate") {
  const Curve triple = builtin_curve("triple");
  const double r = 1.0 / std::sqrt(3.0);
  const double t = kTwoPi / 3.0;
  const Vec2 l = triple.evaluate(t, Side::left);
  const Vec2 rr = triple.evaluate(t, Side::right);
  CHECK(distance(l, polar(r, pi / 2)) < 1e-15);
  CHECK(distance(rr, polar(r, pi / 2 + kTwoPi / 3)) < 1e-15);
  // Seam jump at angle 0.
  CHECK(distance(triple.evaluate(0.0, Side::left), polar(r, pi / 2 + 2 * kTwoPi / 3)) < 1e-15);
  CHECK(distance(triple.evaluate(0.0, Side::right), polar(r, pi / 2)) < 1e-15);

  const Curve vortex = builtin_curve("vortex");
  for (Side s : {Side::left, Side::right}) {
    const Vec2 p = vortex.evaluate(pi / 2, s);
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(1.0));
  }
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < 100; ++i) {
    const double th = angle(rng);
    CHECK(vortex.evaluate(th, Side::left) == vortex.evaluate(th, Side::right));
  }

  // The Cantor function is 1/2 on the middle third, so theta = pi reads the arc midpoint.
  const Vec2 mid = builtin_curve("cantor-arc").evaluate(pi, Side::right);
  CHECK(mid.x == doctest::Approx(std::cos(pi / 4)).epsilon(1e-14));
  CHECK(mid.y == doctest::Approx(std::sin(pi / 4)).epsilon(1e-14));
}

TEST_CASE("cantor function samples") {
  CHECK(cantor_function(0, 6) == 0.0);
  CHECK(cantor_function(729, 6) == 1.0);
  CHECK(cantor_function(243, 6) == 0.5);
  CHECK(cantor_function(486, 6) == 0.5);
  CHECK(cantor_function(81, 6) == 0.25);
  for (std::size_t i = 1; i <= 729; ++i) CHECK(cantor_function(i, 6) >= cantor_function(i - 1, 6));
}

TEST_CASE("apportion is house-monotone and respects floors") {
  const std::vector<double> w{3.0, 0.0, 1.0, 2.5};
  std::vector<std::size_t> prev = apportion(w, 2, 8);
  CHECK(prev == std::vector<std::size_t>{2, 2, 2, 2});
  for (std::size_t n = 9; n < 200; ++n) {
    const auto cur = apportion(w, 2, n);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(cur[i] >= prev[i]);
      sum += cur[i];
    }
    CHECK(sum == n);
    CHECK(cur[1] == 2);
    prev = cur;
  }
}

TEST_CASE("completed curve of the triple point is the triangle") {
  const Curve triple = builtin_curve("triple");
  for (std::size_t n : {8u, 9u, 30u, 301u}) {
    const auto cc = completed_curve(triple, n);
    CHECK(cc.polyline.length() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cc.polyline.vertices().front() == cc.polyline.vertices().back());
    CHECK(cc.tags.size() == cc.polyline.size());
    CHECK(std::abs(cc.polyline.signed_area() - std::sqrt(3.0) / 4) < 1e-12);
  }
}

TEST_CASE("completed curve of the vortex is an inscribed polygon") {
  const Curve vortex = builtin_curve("vortex");
  double prev = 0.0;
  for (std::size_t n = 8; n <= 256; ++n) {
    const auto cc = completed_curve(vortex, n);
    REQUIRE(cc.polyline.size() == n);
    const double expected = 2.0 * static_cast<double>(n) * std::sin(pi / static_cast<double>(n));
    CHECK(cc.polyline.length() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cc.polyline.length() >= prev);
    prev = cc.polyline.length();
  }
  CHECK(completed_curve(vortex, 20000).polyline.length() == doctest::Approx(kTwoPi).epsilon(1e-7));
}

TEST_CASE("completed curve of a half circle with one jump closes along the diameter") {
  const auto cc = completed_curve(half_disk_curve(), 4000);
  CHECK(cc.polyline.length() == doctest::Approx(pi + 2.0).epsilon(1e-6));
  CHECK(cc.polyline.signed_area() == doctest::Approx(pi / 2).epsilon(1e-5));
  double prev = 0.0;
  for (std::size_t n = 8; n < 300; ++n) {
    const double len = completed_curve(half_disk_curve(), n).polyline.length();
    CHECK(len >= prev - 1e-13);  // collinear splits of the jump segment only move rounding
    prev = len;
  }
}

TEST_CASE("completed curve of the cantor arc adds the closing chord") {
  const auto cc = completed_curve(builtin_curve("cantor-arc"), 4096);
  CHECK(std::abs(cc.polyline.length() - (pi / 2 + std::sqrt(2.0))) < 1e-6);
  CHECK(cc.tags.back().piece == 1);
}

TEST_CASE("completed curve of a constant datum is a point") {
  const auto cc = completed_curve(builtin_curve("constant"), 16);
  CHECK(cc.polyline.size() == 1);
  CHECK(cc.polyline.length() == 0.0);
}

TEST_CASE("polygonal data is reproduced exactly once the budget covers the corners") {
  const auto cc = completed_curve(builtin_curve("figure-eight"), 8);
  CHECK(cc.polyline.length() == 8.0);
  CHECK(cc.polyline.size() == 8);
}

TEST_CASE("reparametrization profile") {
  SUBCASE("constant speed") {
    const auto s = reparam_profile(builtin_curve("vortex"));
    const double L = kTwoPi;
    for (double t : {0.0, 0.3, 1.0, 2.5, 6.0, kTwoPi}) {
      CHECK(s.at(t) == doctest::Approx(L * (t + L * t / kTwoPi) / (L + kTwoPi)).epsilon(1e-13));
    }
    CHECK(s.jumps().empty());
  }
  SUBCASE("triple point") {
    const auto s = reparam_profile(builtin_curve("triple"));
    const auto jumps = s.jumps();
    REQUIRE(jumps.size() == 3);
    for (const auto& j : jumps) CHECK(j.width() == doctest::Approx(3.0 / (3.0 + kTwoPi)).epsilon(1e-13));
    CHECK(s.at(kTwoPi) == 3.0);
  }
  SUBCASE("single jump of size two") {
    const Curve c = validate({constant_arc(0.0, pi, {0, 0}), Jump{pi, {0, 0}, {2, 0}},
                              constant_arc(pi, kTwoPi, {2, 0})});
    CHECK(c.open_seam());
    const auto s = reparam_profile(c);
    REQUIRE(s.jumps().size() == 1);
    CHECK(s.jumps()[0].width() == doctest::Approx(2.0 * 2.0 / (2.0 + kTwoPi)).epsilon(1e-13));
  }
  SUBCASE("strictly increasing with jump widths summing to the scaled jump mass") {
    const Curve c = half_disk_curve();
    const auto s = reparam_profile(c);
    const double L = total_variation(c).total;
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double v = s.at(kTwoPi * i / 1000.0);
      CHECK(v > prev);
      prev = v;
    }
    double widths = 0.0;
    for (const auto& j : s.jumps()) widths += j.width();
    CHECK(widths == doctest::Approx(L / (L + kTwoPi) * 2.0).epsilon(1e-13));
  }
}

TEST_CASE("mollified sequence") {
  SUBCASE("Lipschitz data is left unchanged") {
    const Curve vortex = builtin_curve("vortex");
    for (int k : {1, 4, 32}) {
      const auto phi = mollify_sequence(vortex, k);
      CHECK(phi.total_variation() == doctest::Approx(kTwoPi).epsilon(1e-14));
      CHECK(angular_l1_distance(vortex, phi) < 1e-12);
    }
  }
  SUBCASE("triple point converges strictly") {
    const Curve triple = builtin_curve("triple");
    double prev_l1 = 1e300;
    for (int k : {2, 4, 8, 16, 32, 64}) {
      const auto phi = mollify_sequence(triple, k);
      CHECK(phi.total_variation() <= 3.0 + 1e-14);
      CHECK(phi.total_variation() == doctest::Approx(3.0).epsilon(1e-14));
      const double l1 = angular_l1_distance(triple, phi);
      CHECK(l1 < prev_l1);
      // Each linear transition of width w costs |jump| * w / 4 in L1.
      const double w = std::min(kTwoPi / 24.0, 1.0 / k);
      CHECK(l1 == doctest::Approx(3.0 * w / 4.0).epsilon(1e-9));
      prev_l1 = l1;
      // Continuity across the transition windows.
      const auto pts = phi.sampled(40000);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(distance(pts.vertex(i), pts.vertex(i + 1)) < 2e-2);
      }
    }
  }
  SUBCASE("Cantor arc keeps its mass") {
    const Curve c = builtin_curve("cantor-arc");
    for (int k = 1; k <= 20; ++k) {
      CHECK(mollify_sequence(c, k).total_variation() == doctest::Approx(pi / 2).epsilon(1e-14));
    }
  }
  SUBCASE("transition windows") {
    const Curve triple = builtin_curve("triple");
    for (double h : transition_half_widths(triple, 1)) CHECK(h == doctest::Approx(kTwoPi / 48));
    for (double h : transition_half_widths(triple, 100)) CHECK(h == doctest::Approx(0.005));
  }
}

TEST_CASE("curve spec JSON") {
  SUBCASE("round trip") {
    for (const auto& name : builtin_names()) {
      const Curve c = builtin_curve(name);
      const Curve d = curve_from_json(curve_to_json(c));
      CHECK(total_variation(d).total == doctest::Approx(total_variation(c).total).epsilon(1e-15));
      for (int i = 0; i < 50; ++i) {
        const double th = 0.01 + kTwoPi * i / 50.0;
        CHECK(distance(c.evaluate(th, Side::right), d.evaluate(th, Side::right)) < 1e-12);
      }
    }
  }
  SUBCASE("syntax error reports a line") {
    try {
      parse_curve("{\n  \"pieces\": [\n    {\"type\": \"arc\",, }\n  ]\n}");
      FAIL("expected failure");
    } catch (const ValidationError& e) {
      CHECK(e.code() == ValidationError::Code::malformed);
      CHECK(e.field().rfind("line 3", 0) == 0);
    }
  }
  SUBCASE("schema error names the field") {
    try {
      parse_curve(R"({"pieces": [{"type": "arc", "theta0": 0, "theta1": 6.283185307179586,
                     "path": {"kind": "point", "at": [0, "x"]},
                     "ac": {"kind": "linear", "total": 0}, "cantor": {"kind": "linear", "total": 0}}]})");
      FAIL("expected failure");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "pieces[0].path.at[1]");
    }
  }
  SUBCASE("polyline CSV") {
    const auto poly = parse_polyline_csv("# square\n0,0\n1,0\n\n1,1\n0,1\n");
    CHECK(poly.size() == 4);
    CHECK(poly.length() == 4.0);
    CHECK(poly.signed_area() == 1.0);
    CHECK_THROWS_AS(parse_polyline_csv("0,0\n1;0\n"), ValidationError);
  }
}
