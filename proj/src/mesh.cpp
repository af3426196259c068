#include "bvp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace bvp {

namespace {

struct Ring {
  std::vector<std::size_t> ids;
  std::vector<double> angles;  // increasing, within [offset, offset + 2pi)
};

/// Triangulates the strip between two rings by merging their angle sequences.
void zipper(const Ring& inner, const Ring& outer, std::vector<std::array<std::size_t, 3>>& tris) {
  const std::size_t p = inner.ids.size();
  const std::size_t q = outer.ids.size();
  if (p == 1) {
    for (std::size_t j = 0; j < q; ++j) tris.push_back({inner.ids[0], outer.ids[j], outer.ids[(j + 1) % q]});
    return;
  }
  // Unwrapped angle of the k-th point after the start, k in [0, n].
  auto unwrapped = [](const Ring& r, std::size_t k) {
    const std::size_t n = r.ids.size();
    return r.angles[k % n] + kTwoPi * static_cast<double>(k / n);
  };
  // Align the outer start with the inner start.
  std::size_t j0 = 0;
  double best = kTwoPi;
  for (std::size_t j = 0; j < q; ++j) {
    const double d = std::abs(std::remainder(outer.angles[j] - inner.angles[0], kTwoPi));
    if (d < best) {
      best = d;
      j0 = j;
    }
  }
  const double base = inner.angles[0] + std::remainder(outer.angles[j0] - inner.angles[0], kTwoPi);
  auto outer_angle = [&](std::size_t k) {
    const double delta = outer.angles[(j0 + k) % q] - outer.angles[j0];
    return base + wrap_angle(delta) + kTwoPi * static_cast<double>(k / q);
  };
  std::size_t a = 0, b = 0;
  while (a < p || b < q) {
    const bool take_inner = b == q || (a < p && unwrapped(inner, a + 1) < outer_angle(b + 1));
    const std::size_t ia = inner.ids[a % p];
    const std::size_t ob = outer.ids[(j0 + b) % q];
    if (take_inner) {
      tris.push_back({ia, ob, inner.ids[(a + 1) % p]});
      ++a;
    } else {
      tris.push_back({ia, ob, outer.ids[(j0 + b + 1) % q]});
      ++b;
    }
  }
}

double signed_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

}  // namespace

double TriMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double TriMesh::area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
  return a;
}

TriMesh TriMesh::scaled(double factor) const {
  TriMesh m = *this;
  for (Vec2& v : m.vertices) v = factor * v;
  m.radius = radius * factor;
  return m;
}

std::size_t default_boundary_samples(double h) {
  return std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(kTwoPi / h)));
}

TriMesh make_disk_mesh(double h, std::size_t boundary_samples) {
  if (!(h > 0.0 && h < 1.0)) throw MeshError("mesh size h must lie in (0, 1)");
  if (boundary_samples < 8) throw MeshError("need at least 8 boundary samples");

  // Interior rings cannot be finer than the boundary polygon supports.
  h = std::max(h, kTwoPi / (1.5 * static_cast<double>(boundary_samples)));
  const std::size_t rings = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(1.0 / (h * std::sqrt(3.0) / 2.0))));
  std::vector<std::size_t> counts(rings + 1);
  counts[0] = 1;
  counts[rings] = boundary_samples;
  for (std::size_t j = 1; j < rings; ++j) {
    const double r = static_cast<double>(j) / static_cast<double>(rings);
    counts[j] = std::max<std::size_t>(6, static_cast<std::size_t>(std::lround(kTwoPi * r / h)));
  }
  // Keep neighbouring ring sizes within a factor 1.5 of each other.
  for (std::size_t j = rings - 1; j >= 1; --j) {
    counts[j] = std::max(counts[j], static_cast<std::size_t>(std::ceil(counts[j + 1] / 1.5)));
  }

  TriMesh mesh;
  std::vector<Ring> ring(rings + 1);
  mesh.vertices.push_back({0.0, 0.0});
  ring[0].ids = {0};
  ring[0].angles = {0.0};
  for (std::size_t j = 1; j <= rings; ++j) {
    const double r = j == rings ? 1.0 : static_cast<double>(j) / static_cast<double>(rings);
    const double n = static_cast<double>(counts[j]);
    const double offset = (j == rings || j % 2 == 0) ? 0.0 : std::numbers::pi / n;
    for (std::size_t k = 0; k < counts[j]; ++k) {
      const double angle = offset + kTwoPi * static_cast<double>(k) / n;
      ring[j].ids.push_back(mesh.vertices.size());
      ring[j].angles.push_back(angle);
      mesh.vertices.push_back(j == rings ? Vec2{std::cos(angle), std::sin(angle)} : polar(r, angle));
    }
  }
  mesh.boundary_loop = ring[rings].ids;
  for (std::size_t j = 0; j < rings; ++j) zipper(ring[j], ring[j + 1], mesh.triangles);
  return mesh;
}

MeshQuality check_mesh(const TriMesh& mesh) {
  MeshQuality q;
  q.min_angle_deg = 180.0;
  q.min_area = mesh.triangles.empty() ? 0.0 : 1e300;
  std::map<std::pair<std::size_t, std::size_t>, int> directed;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double a = mesh.triangle_area(t);
    q.min_area = std::min(q.min_area, a);
    if (!(a > 0.0)) q.problems.push_back("triangle " + std::to_string(t) + " is not positively oriented");
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = mesh.vertices[tri[k]];
      const Vec2 u = mesh.vertices[tri[(k + 1) % 3]] - p;
      const Vec2 v = mesh.vertices[tri[(k + 2) % 3]] - p;
      const double angle = std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 / std::numbers::pi;
      q.min_angle_deg = std::min(q.min_angle_deg, angle);
      q.max_edge = std::max(q.max_edge, norm(u));
      ++directed[{tri[k], tri[(k + 1) % 3]}];
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, int> boundary_edges;
  std::size_t undirected = 0;
  for (const auto& [e, count] : directed) {
    if (count > 1) q.problems.push_back("edge traversed twice in the same direction");
    const bool has_twin = directed.count({e.second, e.first}) > 0;
    if (!has_twin) boundary_edges[e] = count;
    if (!has_twin || e.first < e.second) ++undirected;
  }
  const std::size_t nb = mesh.boundary_loop.size();
  if (boundary_edges.size() != nb) q.problems.push_back("boundary edges do not match the boundary loop");
  for (std::size_t k = 0; k < nb; ++k) {
    const std::size_t a = mesh.boundary_loop[k];
    const std::size_t b = mesh.boundary_loop[(k + 1) % nb];
    if (!boundary_edges.count({a, b})) {
      q.problems.push_back("boundary loop edge " + std::to_string(k) + " is not a mesh boundary edge");
      break;
    }
  }
  for (std::size_t id : mesh.boundary_loop) {
    if (std::abs(norm(mesh.vertices[id]) - mesh.radius) > 1e-12 * mesh.radius) {
      q.problems.push_back("boundary vertex " + std::to_string(id) + " is off the circle");
      break;
    }
  }
  q.euler_characteristic = static_cast<long>(mesh.vertices.size()) - static_cast<long>(undirected) +
                           static_cast<long>(mesh.triangles.size());
  if (q.euler_characteristic != 1) q.problems.push_back("Euler characteristic is not 1");
  q.valid = q.problems.empty();
  return q;
}

}  // namespace bvp
