#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvp/curve.hpp"
#include "bvp/discrete_map.hpp"
#include "bvp/plateau.hpp"

namespace bvp {

struct ExtensionParams {
  double radius = 1.0;
  std::size_t nodes = 4096;  // angular quadrature nodes (centroid, L1 distances)
};

/// Throws std::invalid_argument unless radius is finite and positive and nodes
/// is even and at least 64.
void check_params(const ExtensionParams& params);

/// Integral over [0, ell] of sqrt(rho^2 + m^2) in closed form.
double radial_area(double ell, double m);

/// Pieces of constant a.c. speed: angle width and speed |gamma_a'| on each cell.
struct DensityCell {
  double theta0 = 0.0;
  double width = 0.0;
  double speed = 0.0;
};
std::vector<DensityCell> density_cells(const Curve& curve);

/// Integral of sqrt(1 + |grad u|^2) over the disk of the given radius,
/// integrated exactly on every density cell.
double graph_area_term(const Curve& curve, const ExtensionParams& params);
/// Same integrand over the annulus r0 < |x| < r1 (r0 may be 0).
double graph_area_on(const Curve& curve, double r0, double r1);

double singular_term(const Curve& curve, const ExtensionParams& params);
double total_variation_Du(const Curve& curve, const ExtensionParams& params);
/// Variation on the annulus eps < |x| < radius; throws std::domain_error
/// unless 0 <= eps < radius.
double tangential_variation(const Curve& curve, double eps, const ExtensionParams& params);

struct EnergyReport {
  double graph_area_term = 0.0;
  double singular_term = 0.0;
  PlateauCertificate plateau;
  double relaxed_area_lower = 0.0;
  double relaxed_area_upper = 0.0;
  double tvj_lower = 0.0;
  double tvj_upper = 0.0;
  double radius = 1.0;
  std::size_t nodes = 0;
};

EnergyReport relaxed_area(const Curve& curve, const ExtensionParams& params,
                          const PlateauOptions& plateau_options);
/// Relaxed area from an already computed certificate.
EnergyReport relaxed_area(const Curve& curve, const ExtensionParams& params,
                          const PlateauCertificate& plateau);

struct MeasureBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// The relaxed area measure of the annulus r0 < |x| < r1, or of the open disk
/// of radius r1 when r0 = 0 (only then is the Plateau atom at the origin counted).
MeasureBracket relaxed_area_measure(const Curve& curve, const PlateauCertificate& plateau,
                                    double r0, double r1);

/// u(x) = gamma(x/|x|) (right trace) at every mesh vertex; the origin gets the
/// curve centroid. The mesh must have radius params.radius.
DiscreteMap sample_extension(const Curve& curve, const TriMesh& mesh, const ExtensionParams& params);

}  // namespace bvp
