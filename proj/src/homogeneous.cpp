#include "bvp/homogeneous.hpp"

#include <cmath>
#include <stdexcept>

namespace bvp {

void check_params(const ExtensionParams& params) {
  if (!(params.radius > 0.0) || !std::isfinite(params.radius))
    throw std::invalid_argument("radius must be finite and positive");
  if (params.nodes < 64 || params.nodes % 2 != 0)
    throw std::invalid_argument("quadrature nodes must be even and at least 64");
}

double radial_area(double ell, double m) {
  if (ell == 0.0) return 0.0;
  if (m < 1e-14 * ell) return 0.5 * ell * ell;
  return 0.5 * (ell * std::hypot(ell, m) + m * m * std::asinh(ell / m));
}

std::vector<DensityCell> density_cells(const Curve& curve) {
  std::vector<DensityCell> cells;
  for (std::size_t i = 0; i < curve.arc_count(); ++i) {
    const Arc& arc = curve.arc(i);
    const std::vector<double> u = arc.ac.knots();
    for (std::size_t j = 0; j + 1 < u.size(); ++j) {
      const double width = (u[j + 1] - u[j]) * arc.span();
      if (!(width > 0.0)) continue;
      const double mass = arc.ac.at(u[j + 1]) - arc.ac.at(u[j]);
      cells.push_back({arc.theta0 + u[j] * arc.span(), width, mass / width});
    }
  }
  return cells;
}

double graph_area_on(const Curve& curve, double r0, double r1) {
  if (!(0.0 <= r0 && r0 < r1)) throw std::domain_error("need 0 <= r0 < r1");
  double s = 0.0;
  for (const DensityCell& c : density_cells(curve))
    s += c.width * (radial_area(r1, c.speed) - radial_area(r0, c.speed));
  return s;
}

double graph_area_term(const Curve& curve, const ExtensionParams& params) {
  check_params(params);
  return graph_area_on(curve, 0.0, params.radius);
}

double singular_term(const Curve& curve, const ExtensionParams& params) {
  check_params(params);
  const VariationDecomposition d = total_variation(curve);
  return params.radius * (d.jump_mass + d.cantor_mass);
}

double total_variation_Du(const Curve& curve, const ExtensionParams& params) {
  check_params(params);
  return params.radius * total_variation(curve).total;
}

double tangential_variation(const Curve& curve, double eps, const ExtensionParams& params) {
  check_params(params);
  if (!(eps >= 0.0 && eps < params.radius)) throw std::domain_error("need 0 <= eps < radius");
  return (params.radius - eps) * total_variation(curve).total;
}

EnergyReport relaxed_area(const Curve& curve, const ExtensionParams& params,
                          const PlateauCertificate& plateau) {
  EnergyReport r;
  r.graph_area_term = graph_area_term(curve, params);
  r.singular_term = singular_term(curve, params);
  r.plateau = plateau;
  r.tvj_lower = plateau.lower;
  r.tvj_upper = plateau.upper;
  r.relaxed_area_lower = r.graph_area_term + r.singular_term + plateau.lower;
  r.relaxed_area_upper = r.graph_area_term + r.singular_term + plateau.upper;
  r.radius = params.radius;
  r.nodes = params.nodes;
  return r;
}

EnergyReport relaxed_area(const Curve& curve, const ExtensionParams& params,
                          const PlateauOptions& plateau_options) {
  check_params(params);
  return relaxed_area(curve, params, plateau_value(curve, plateau_options));
}

MeasureBracket relaxed_area_measure(const Curve& curve, const PlateauCertificate& plateau,
                                    double r0, double r1) {
  const VariationDecomposition d = total_variation(curve);
  const double base = graph_area_on(curve, r0, r1) + (r1 - r0) * (d.jump_mass + d.cantor_mass);
  if (r0 > 0.0) return {base, base};
  return {base + plateau.lower, base + plateau.upper};
}

DiscreteMap sample_extension(const Curve& curve, const TriMesh& mesh, const ExtensionParams& params) {
  check_params(params);
  if (std::abs(mesh.radius - params.radius) > 1e-12 * params.radius)
    throw std::invalid_argument("mesh radius does not match the extension radius");
  DiscreteMap map{mesh, std::vector<Vec2>(mesh.vertices.size())};
  const Vec2 center = curve.centroid(params.nodes);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec2 x = mesh.vertices[v];
    map.values[v] = (x.x == 0.0 && x.y == 0.0) ? center : curve.evaluate(std::atan2(x.y, x.x), Side::right);
  }
  return map;
}

}  // namespace bvp
