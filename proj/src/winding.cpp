#include "bvp/winding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

#include "bvp/predicates.hpp"

namespace bvp {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

void reject_on_curve(const ClosedPolyline& poly, Vec2 p, double rel_eps) {
  const double eps = snap_distance(poly, rel_eps);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly.vertex(i);
    const Vec2 b = poly.vertex(i + 1);
    const double d = point_segment_distance(p, a, b);
    if (d <= eps || (orient2d(a, b, p) == 0 && on_collinear_segment(a, b, p))) {
      throw PointOnCurveError(p, i, d);
    }
  }
}

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Part of the curve between two arrangement points, traversed net times from a to b.
struct Piece {
  std::size_t a;
  std::size_t b;
  int net;
  std::size_t seg;  // input segment, for diagnostics
};

struct EdgeData {
  int net = 0;  // traversals lo -> hi minus hi -> lo
  std::size_t seg = 0;
};

constexpr int kMaxSnapRounds = 64;

/// Signed area of a closed cycle, summed from its lexicographically smallest
/// vertex so the result does not depend on where the traversal started.
double canonical_area(const std::vector<Vec2>& cycle) {
  const std::size_t n = cycle.size();
  if (n < 3) return 0.0;
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (lex_less(cycle[i], cycle[start]) ||
        (cycle[i] == cycle[start] && lex_less(cycle[(i + 1) % n], cycle[(start + 1) % n]))) {
      start = i;
    }
  }
  const Vec2 o = cycle[start];
  double a = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    a += cross(cycle[(start + k) % n] - o, cycle[(start + k + 1) % n] - o);
  }
  return 0.5 * a;
}

Vec2 lowest_vertex(const std::vector<Vec2>& cycle) {
  return *std::min_element(cycle.begin(), cycle.end(), lex_less);
}

bool strictly_between(Vec2 a, Vec2 v, Vec2 b) {
  if (a.x != b.x) return (a.x < v.x && v.x < b.x) || (b.x < v.x && v.x < a.x);
  return (a.y < v.y && v.y < b.y) || (b.y < v.y && v.y < a.y);
}

/// Indices of the vertices that remain after dropping repeats and vertices the
/// curve passes straight through, so inserting such points changes nothing.
std::vector<std::size_t> corner_vertices(const ClosedPolyline& poly) {
  const std::size_t n = poly.size();
  std::vector<std::size_t> prev(n), next(n);
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = (i + n - 1) % n;
    next[i] = (i + 1) % n;
  }
  std::size_t count = n;
  std::vector<std::size_t> work(n);
  std::iota(work.rbegin(), work.rend(), 0);
  while (!work.empty() && count > 2) {
    const std::size_t v = work.back();
    work.pop_back();
    if (!alive[v]) continue;
    const Vec2 a = poly.vertex(prev[v]), x = poly.vertex(v), b = poly.vertex(next[v]);
    const bool repeat = x == a;
    if (!repeat && !(orient2d(a, x, b) == 0 && strictly_between(a, x, b))) continue;
    alive[v] = false;
    --count;
    next[prev[v]] = next[v];
    prev[next[v]] = prev[v];
    work.push_back(next[v]);
    work.push_back(prev[v]);
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) kept.push_back(i);
  }
  return kept;
}

}  // namespace

PointOnCurveError::PointOnCurveError(Vec2 point, std::size_t segment, double distance)
    : std::domain_error([&] {
        std::ostringstream msg;
        msg << "point (" << point.x << ", " << point.y << ") lies on the curve: distance " << distance
            << " to segment " << segment;
        return msg.str();
      }()),
      point_(point),
      segment_(segment),
      distance_(distance) {}

ArrangementError::ArrangementError(std::size_t segment_a, std::size_t segment_b, const std::string& message)
    : std::runtime_error(message + " (segments " + std::to_string(segment_a) + " and " +
                         std::to_string(segment_b) + ")"),
      a_(segment_a),
      b_(segment_b) {}

double snap_distance(const ClosedPolyline& poly, double rel_eps) {
  if (poly.empty()) return 0.0;
  double x0 = poly.vertex(0).x, x1 = x0, y0 = poly.vertex(0).y, y1 = y0;
  for (const Vec2& v : poly.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  return rel_eps * std::max(x1 - x0, y1 - y0);
}

int winding_number(const ClosedPolyline& poly, Vec2 p, double rel_eps) {
  if (poly.empty()) return 0;
  reject_on_curve(poly, p, rel_eps);
  int w = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly.vertex(i);
    const Vec2 b = poly.vertex(i + 1);
    if (a.y <= p.y) {
      if (b.y > p.y && orient2d(a, b, p) > 0) ++w;
    } else if (b.y <= p.y && orient2d(a, b, p) < 0) {
      --w;
    }
  }
  return w;
}

int winding_number_angle(const ClosedPolyline& poly, Vec2 p, double rel_eps) {
  if (poly.empty()) return 0;
  reject_on_curve(poly, p, rel_eps);
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly.vertex(i) - p;
    const Vec2 b = poly.vertex(i + 1) - p;
    total += std::atan2(cross(a, b), dot(a, b));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

Arrangement build_arrangement(const ClosedPolyline& poly, double rel_eps) {
  Arrangement out;
  if (poly.empty()) return out;
  const double eps = snap_distance(poly, rel_eps);

  const std::vector<std::size_t> corners = corner_vertices(poly);
  const std::size_t m = corners.size();
  std::vector<Vec2> pts;
  for (std::size_t i : corners) pts.push_back(poly.vertex(i));
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < m; ++k) {
    if (pts[k] != pts[(k + 1) % m]) pieces.push_back({k, (k + 1) % m, 1, corners[k]});
  }
  if (pieces.empty()) return out;
  const std::size_t first_seg = pieces.front().seg, last_seg = pieces.back().seg;

  // Each round splits the pieces at their crossings and at points within eps
  // of their interiors, then merges points closer than eps. Merging moves
  // pieces, which can create new crossings, so rounds repeat until stable.
  std::optional<std::pair<std::size_t, std::size_t>> near_pair;
  std::map<std::pair<std::size_t, std::size_t>, EdgeData> edges;
  for (int round = 0;; ++round) {
    if (round == kMaxSnapRounds) throw ArrangementError(first_seg, last_seg, "snapping did not settle");
    const std::size_t n_before = pts.size();
    std::vector<std::vector<std::size_t>> splits(pieces.size());
    std::vector<std::pair<std::size_t, std::size_t>> origin(pts.size(), {SIZE_MAX, SIZE_MAX});

    // Canonical endpoint order so intersection points do not depend on the
    // traversal direction or starting vertex.
    struct Canon {
      Vec2 lo, hi;
      std::size_t piece;
    };
    std::vector<Canon> canon;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      Vec2 lo = pts[pieces[k].a], hi = pts[pieces[k].b];
      if (lex_less(hi, lo)) std::swap(lo, hi);
      canon.push_back({lo, hi, k});
    }
    std::sort(canon.begin(), canon.end(), [](const Canon& p, const Canon& q) {
      if (p.lo != q.lo) return lex_less(p.lo, q.lo);
      return lex_less(p.hi, q.hi);
    });
    for (std::size_t i = 0; i < canon.size(); ++i) {
      const Canon& p = canon[i];
      const double py0 = std::min(p.lo.y, p.hi.y), py1 = std::max(p.lo.y, p.hi.y);
      for (std::size_t j = i + 1; j < canon.size() && canon[j].lo.x <= p.hi.x; ++j) {
        const Canon& q = canon[j];
        if (std::max(q.lo.y, q.hi.y) < py0 || std::min(q.lo.y, q.hi.y) > py1) continue;
        const int o1 = orient2d(p.lo, p.hi, q.lo);
        const int o2 = orient2d(p.lo, p.hi, q.hi);
        const int o3 = orient2d(q.lo, q.hi, p.lo);
        const int o4 = orient2d(q.lo, q.hi, p.hi);
        if (o1 * o2 < 0 && o3 * o4 < 0) {
          const Vec2 r = p.hi - p.lo;
          const Vec2 s = q.hi - q.lo;
          // Nearly parallel pieces give an ill-conditioned parameter on one of
          // them; keep whichever point lies on both, else leave the overlap to
          // the near-point split below.
          const double t = std::clamp(cross(q.lo - p.lo, s) / cross(r, s), 0.0, 1.0);
          const double u = std::clamp(cross(q.lo - p.lo, r) / cross(r, s), 0.0, 1.0);
          const Vec2 x = p.lo + t * r, y = q.lo + u * s;
          if (point_segment_distance(x, q.lo, q.hi) <= eps) pts.push_back(x);
          else if (point_segment_distance(y, p.lo, p.hi) <= eps) pts.push_back(y);
          else continue;
          origin.emplace_back(pieces[p.piece].seg, pieces[q.piece].seg);
          splits[p.piece].push_back(pts.size() - 1);
          splits[q.piece].push_back(pts.size() - 1);
          continue;
        }
        // Touching and collinear overlaps: endpoints lying on the other piece.
        auto endpoint_id = [&](std::size_t k, Vec2 v) { return pts[pieces[k].a] == v ? pieces[k].a : pieces[k].b; };
        if (o1 == 0 && on_collinear_segment(p.lo, p.hi, q.lo)) splits[p.piece].push_back(endpoint_id(q.piece, q.lo));
        if (o2 == 0 && on_collinear_segment(p.lo, p.hi, q.hi)) splits[p.piece].push_back(endpoint_id(q.piece, q.hi));
        if (o3 == 0 && on_collinear_segment(q.lo, q.hi, p.lo)) splits[q.piece].push_back(endpoint_id(p.piece, p.lo));
        if (o4 == 0 && on_collinear_segment(q.lo, q.hi, p.hi)) splits[q.piece].push_back(endpoint_id(p.piece, p.hi));
      }
    }

    // Points within eps of a piece's interior split it, so nearly collinear
    // pieces share their subdivision after merging.
    std::vector<std::size_t> by_x(pts.size());
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](std::size_t i, std::size_t j) { return pts[i].x < pts[j].x; });
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const Vec2 a = pts[pieces[k].a], b = pts[pieces[k].b];
      const Vec2 d = b - a;
      const double len2 = dot(d, d);
      const double y0 = std::min(a.y, b.y) - eps, y1 = std::max(a.y, b.y) + eps;
      auto it = std::lower_bound(by_x.begin(), by_x.end(), std::min(a.x, b.x) - eps,
                                 [&](std::size_t i, double x) { return pts[i].x < x; });
      for (; it != by_x.end() && pts[*it].x <= std::max(a.x, b.x) + eps; ++it) {
        const Vec2 p = pts[*it];
        if (p.y < y0 || p.y > y1) continue;
        const double t = dot(p - a, d) / len2;
        if (t > 0.0 && t < 1.0 && distance(p, a + t * d) <= eps) splits[k].push_back(*it);
      }
    }

    // Snap clustering on a hash grid with cell size eps.
    UnionFind uf(pts.size());
    bool merged = false;
    {
      const double cell = eps > 0.0 ? eps : 1.0;
      std::map<std::pair<long long, long long>, std::vector<std::size_t>> grid;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const long long cx = static_cast<long long>(std::floor(pts[i].x / cell));
        const long long cy = static_cast<long long>(std::floor(pts[i].y / cell));
        for (long long dx = -1; dx <= 1; ++dx) {
          for (long long dy = -1; dy <= 1; ++dy) {
            auto it = grid.find({cx + dx, cy + dy});
            if (it == grid.end()) continue;
            for (std::size_t j : it->second) {
              if (distance(pts[i], pts[j]) > eps || uf.find(i) == uf.find(j)) continue;
              merged = true;
              if (pts[i] != pts[j]) {
                ++out.snapped_points;
                const auto& oi = origin[i].first != SIZE_MAX ? origin[i] : origin[j];
                if (oi.first != SIZE_MAX && !near_pair) near_pair = oi;
              }
              uf.unite(i, j);
            }
          }
        }
        grid[{cx, cy}].push_back(i);
      }
    }
    // Representative position: lexicographically smallest member. Clusters are
    // renumbered in the order of their representatives.
    std::vector<Vec2> rep(pts.size());
    std::vector<bool> has_rep(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t r = uf.find(i);
      if (!has_rep[r] || lex_less(pts[i], rep[r])) rep[r] = pts[i];
      has_rep[r] = true;
    }
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (uf.find(i) == i) roots.push_back(i);
    }
    std::sort(roots.begin(), roots.end(), [&](std::size_t i, std::size_t j) { return lex_less(rep[i], rep[j]); });
    std::vector<std::size_t> id(pts.size());
    std::vector<Vec2> next_pts;
    for (std::size_t r : roots) {
      id[r] = next_pts.size();
      next_pts.push_back(rep[r]);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) id[i] = id[uf.find(i)];

    // Split pieces and accumulate net traversal counts per undirected edge.
    bool split = false;
    edges.clear();
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const Piece& pc = pieces[k];
      const Vec2 a = pts[pc.a];
      const Vec2 d = pts[pc.b] - a;
      const double len2 = dot(d, d);
      std::vector<std::pair<double, std::size_t>> order{{0.0, pc.a}, {1.0, pc.b}};
      for (std::size_t i : splits[k]) order.emplace_back(dot(pts[i] - a, d) / len2, i);
      std::sort(order.begin(), order.end());
      std::size_t prev = id[order.front().second];
      std::size_t produced = 0;
      for (std::size_t j = 1; j < order.size(); ++j) {
        const std::size_t cur = id[order[j].second];
        if (cur == prev) continue;
        auto& e = edges[{std::min(prev, cur), std::max(prev, cur)}];
        e.net += prev < cur ? pc.net : -pc.net;
        e.seg = pc.seg;
        prev = cur;
        ++produced;
      }
      if (produced != 1) split = true;
    }
    pts = std::move(next_pts);
    pieces.clear();
    for (const auto& [key, e] : edges) pieces.push_back({key.first, key.second, e.net, e.seg});
    if (pts.size() == n_before && !merged && !split) break;
  }
  const std::vector<Vec2>& rep = pts;
  if (edges.empty()) return out;

  // Half-edge structure: half-edge 2e runs lo -> hi, 2e+1 runs hi -> lo.
  std::vector<std::size_t> he_from, he_to;
  std::vector<int> he_count;
  std::vector<std::size_t> he_seg;
  for (const auto& [key, e] : edges) {
    he_from.push_back(key.first);
    he_to.push_back(key.second);
    he_count.push_back(e.net);
    he_seg.push_back(e.seg);
    he_from.push_back(key.second);
    he_to.push_back(key.first);
    he_count.push_back(-e.net);
    he_seg.push_back(e.seg);
  }
  const std::size_t nh = he_from.size();
  std::unordered_map<std::size_t, std::vector<std::size_t>> outgoing;
  for (std::size_t h = 0; h < nh; ++h) outgoing[he_from[h]].push_back(h);
  std::vector<std::size_t> slot(nh);
  for (auto& [v, list] : outgoing) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      const Vec2 da = rep[he_to[a]] - rep[v];
      const Vec2 db = rep[he_to[b]] - rep[v];
      return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
    });
    for (std::size_t k = 0; k < list.size(); ++k) slot[list[k]] = k;
  }
  auto next = [&](std::size_t h) {
    const std::size_t twin = h ^ 1;
    const auto& list = outgoing[he_to[h]];
    return list[(slot[twin] + list.size() - 1) % list.size()];
  };

  std::vector<std::size_t> face_of(nh, SIZE_MAX);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t h = 0; h < nh; ++h) {
    if (face_of[h] != SIZE_MAX) continue;
    std::vector<std::size_t> cycle;
    std::size_t g = h;
    do {
      face_of[g] = cycles.size();
      cycle.push_back(g);
      g = next(g);
    } while (g != h);
    cycles.push_back(std::move(cycle));
  }

  out.faces.resize(cycles.size());
  std::size_t outer = 0;
  std::vector<double> signed_areas(cycles.size());
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    for (std::size_t h : cycles[f]) out.faces[f].boundary.push_back(rep[he_from[h]]);
    signed_areas[f] = canonical_area(out.faces[f].boundary);
    if (signed_areas[f] < signed_areas[outer]) outer = f;
  }

  // Winding numbers from the unbounded face: w(left) = w(right) + net count.
  std::vector<int> w(cycles.size(), 0);
  std::vector<bool> known(cycles.size(), false);
  known[outer] = true;
  std::queue<std::size_t> queue;
  queue.push(outer);
  while (!queue.empty()) {
    const std::size_t f = queue.front();
    queue.pop();
    for (std::size_t h : cycles[f]) {
      const std::size_t g = face_of[h ^ 1];
      const int wg = w[f] - he_count[h];
      if (!known[g]) {
        known[g] = true;
        w[g] = wg;
        queue.push(g);
      } else if (w[g] != wg) {
        const auto pair = near_pair.value_or(std::make_pair(he_seg[h], he_seg[h]));
        throw ArrangementError(pair.first, pair.second, "inconsistent winding numbers across an edge");
      }
    }
  }

  double weighted = 0.0;
  double absolute = 0.0;
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    Face& face = out.faces[f];
    face.winding = w[f];
    face.unbounded = f == outer;
    face.area = face.unbounded ? 0.0 : signed_areas[f];
    if (!known[f] || (!face.unbounded && face.area < 0.0)) {
      const auto pair = near_pair.value_or(std::make_pair(he_seg[cycles[f][0]], he_seg[cycles[f][0]]));
      throw ArrangementError(pair.first, pair.second, "face structure is not planar");
    }
    weighted += face.winding * face.area;
    absolute += face.area;
  }
  const double shoelace = poly.signed_area();
  const double scale = eps / rel_eps;
  if (std::abs(weighted - shoelace) > 1e-9 * (absolute + 1e-6 * scale * scale)) {
    const auto pair = near_pair.value_or(std::make_pair(first_seg, last_seg));
    std::ostringstream msg;
    msg << "winding-weighted face areas sum to " << weighted << " but the shoelace area is " << shoelace;
    throw ArrangementError(pair.first, pair.second, msg.str());
  }

  // Bounded faces first in a geometric order, so sums are reproducible.
  std::stable_sort(out.faces.begin(), out.faces.end(), [](const Face& a, const Face& b) {
    if (a.unbounded != b.unbounded) return b.unbounded;
    const Vec2 la = lowest_vertex(a.boundary), lb = lowest_vertex(b.boundary);
    if (la != lb) return lex_less(la, lb);
    return a.area < b.area;
  });
  out.vertex_count = outgoing.size();
  out.edge_count = edges.size();
  return out;
}

double winding_area(const ClosedPolyline& poly, double rel_eps) {
  double total = 0.0;
  for (const Face& f : build_arrangement(poly, rel_eps).faces) {
    if (!f.unbounded) total += std::abs(f.winding) * f.area;
  }
  return total;
}

GridEstimate winding_area_grid(const ClosedPolyline& poly, int resolution, std::uint64_t seed) {
  GridEstimate est;
  if (poly.empty() || poly.length() == 0.0) return est;
  double x0 = poly.vertex(0).x, x1 = x0, y0 = poly.vertex(0).y, y1 = y0;
  for (const Vec2& v : poly.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  const double gx = 0.005 * (x1 - x0), gy = 0.005 * (y1 - y0);
  x0 -= gx;
  x1 += gx;
  y0 -= gy;
  y1 += gy;
  const double box = (x1 - x0) * (y1 - y0);
  if (box == 0.0) return est;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double dx = (x1 - x0) / resolution, dy = (y1 - y0) / resolution;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      for (;;) {
        const Vec2 p{x0 + (i + unit(rng)) * dx, y0 + (j + unit(rng)) * dy};
        try {
          const double v = std::abs(winding_number(poly, p));
          sum += v;
          sum2 += v * v;
          break;
        } catch (const PointOnCurveError&) {
          // Measure-zero event: draw again.
        }
      }
    }
  }
  const double n = static_cast<double>(resolution) * resolution;
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  est.value = box * mean;
  est.standard_error = box * std::sqrt(var / n);
  est.samples = static_cast<std::size_t>(n);
  return est;
}

}  // namespace bvp
