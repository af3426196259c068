#pragma once

#include <cstddef>
#include <vector>

#include "bvp/curve.hpp"
#include "bvp/discrete_map.hpp"
#include "bvp/homogeneous.hpp"
#include "bvp/plateau.hpp"

namespace bvp {

/// Radial grading next to the inner disk: ring gaps h*radius*0.7^4, ..., 0.7^1,
/// then uniform gaps of about h*radius out to the boundary.
inline constexpr double kGradingFactor = 0.7;
inline constexpr int kGradedRings = 4;

struct RecoveryMap {
  DiscreteMap map;              // on the disk of radius params.radius
  std::size_t inner_triangles;  // the re-embedded filler comes first
  std::size_t cap_triangles;    // then the slivers between its boundary and the circle
  std::vector<double> ray_angles;
};

/// v_k: the filler, re-embedded (Tutte) in B_{radius/k} with its boundary vertex j
/// placed where the mollified datum phi_k reaches the j-th completed-curve
/// vertex, surrounded by the homogeneous extension of phi_k on the annulus.
/// Angular gaps are split below h. Throws std::invalid_argument on a
/// filler/datum mismatch or k < 2, std::domain_error for an open seam.
RecoveryMap recovery_sequence(const Curve& curve, const ExtensionParams& params, int k,
                              const PlateauSolution& filler, double h);

struct SequenceTolerances {
  double tv_rel = 1e-9;
  double l1_abs = 0.05;
  double area_rel = 0.05;
  double jacobian_rel = 1e-3;
};

struct SequenceReport {
  std::vector<int> ks;
  std::vector<double> l1_errors;           // ||u_k - u||_1 on the disk
  std::vector<double> tv_values;           // radius * TV(phi_k)
  std::vector<double> area_values;         // area functional of v_k
  std::vector<double> jacobian_tv_values;  // sum of |J| over v_k
  double tv_target = 0.0;
  double filler_jacobian_tv = 0.0;
  EnergyReport relaxed;  // the bracket the areas should approach
  SequenceTolerances tolerances;
  bool tv_never_exceeds = true;
  bool tv_nondecreasing = true;
  bool l1_nonincreasing = true;
  bool tv_converged = false;
  bool l1_converged = false;
  bool area_converged = false;     // last area within area_rel of the lower bracket
  bool jacobian_preserved = true;  // every k within jacobian_rel of the filler
  bool passed() const;
};

/// ks must be increasing and >= 2.
SequenceReport strict_convergence_report(const Curve& curve, const ExtensionParams& params,
                                         const std::vector<int>& ks, const PlateauSolution& filler,
                                         double h, const SequenceTolerances& tolerances = {});

struct SliceReport {
  std::vector<double> radii;
  std::vector<double> slice_tv;
  std::vector<std::size_t> samples;  // sample count per circle
  double integrated = 0.0;           // midpoint rule over the radii
  double exact = 0.0;                // tangential_variation(curve, eps, params)
  double relative_error = 0.0;       // 0 when both sides vanish
};

/// Slice variation on n_radii circles from sampled values plus exact jump atoms.
/// Requires 0 < eps < radius (eps = 0 is accepted as well) and n_radii >= 1.
SliceReport slicing_check(const Curve& curve, const ExtensionParams& params, double eps,
                          std::size_t n_radii);

}  // namespace bvp
