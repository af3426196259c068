#pragma once

#include <cstddef>
#include <vector>

#include "bvp/completion.hpp"
#include "bvp/curve.hpp"
#include "bvp/discrete_map.hpp"
#include "bvp/polyline.hpp"

namespace bvp {

struct PlateauOptions {
  double h = 0.05;
  std::vector<double> delta_schedule{1e-1, 1e-2, 1e-3, 1e-4};
  std::size_t max_iters = 20000;  // per delta
  double grad_tol = 1e-8;
  double gap_flag = 0.05;  // relative gap above which the bracket is flagged
  bool record_history = false;
};

struct StageReport {
  double delta = 0.0;
  std::size_t iterations = 0;
  double energy = 0.0;  // E_delta at the end of the stage
  double grad_norm = 0.0;
  bool converged = false;
  bool stalled = false;
};

struct MinimizeResult {
  DiscreteMap map;
  double upper = 0.0;  // sum of |image area|, no smoothing
  std::vector<StageReport> stages;
  std::vector<double> history;  // E_delta after every accepted step, all stages
  bool converged = true;        // the last stage met the tolerance or stalled
  double grad_norm = 0.0;       // last stage
  std::size_t iterations = 0;   // all stages
};

/// Smoothed energy sum_T sqrt(a_T^2 + delta^2 area(T)^2) with a_T the signed
/// image area; writes d/d(values) into grad (one Vec2 per vertex) if non-null.
double smoothed_jacobian_energy(const DiscreteMap& map, double delta, std::vector<Vec2>* grad = nullptr);

/// Homogeneous extension of the polyline onto the mesh: boundary vertex k gets
/// polyline vertex k, interior points follow their angle along the vertex-uniform
/// parametrization, the origin gets the vertex mean.
DiscreteMap homogeneous_guess(const ClosedPolyline& poly, const TriMesh& mesh);

/// Requires mesh.boundary_loop.size() == poly.size() and a strictly decreasing,
/// positive schedule (std::invalid_argument otherwise). Boundary values are
/// copied from the polyline and never modified.
MinimizeResult jacobian_tv_minimize(const ClosedPolyline& poly, const TriMesh& mesh,
                                    const PlateauOptions& options);

/// Inserts evenly spaced points on the edges (edge budgets by length) until the
/// polyline has at least n slots. Original vertices are kept.
ClosedPolyline refine_polyline(const ClosedPolyline& poly, std::size_t n);

struct PlateauCertificate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> delta_schedule;
  double h = 0.0;
  std::size_t boundary_samples = 0;
  std::size_t iterations = 0;
  bool converged = true;
  double grad_norm = 0.0;
  double relative_gap = 0.0;
  bool gap_flagged = false;
};

struct PlateauSolution {
  PlateauCertificate certificate;
  ClosedPolyline boundary;  // the polyline actually spanned
  DiscreteMap filler;       // on the unit disk
  std::vector<StageReport> stages;
  /// Origin of every boundary vertex on the datum (Curve input with positive
  /// variation only); boundary vertex k of the filler carries tags[k].
  std::vector<VertexTag> tags;
};

PlateauSolution plateau_solve(const ClosedPolyline& poly, const PlateauOptions& options);
/// Spans the completed curve with default_boundary_samples(h) target vertices.
PlateauSolution plateau_solve(const Curve& curve, const PlateauOptions& options);

PlateauCertificate plateau_value(const ClosedPolyline& poly, const PlateauOptions& options);
PlateauCertificate plateau_value(const Curve& curve, const PlateauOptions& options);

}  // namespace bvp
