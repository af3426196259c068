#include "bvp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bvp/completion.hpp"
#include "bvp/curve_io.hpp"
#include "bvp/homogeneous.hpp"
#include "bvp/mesh.hpp"
#include "bvp/plateau.hpp"
#include "bvp/relaxation.hpp"
#include "bvp/svg.hpp"
#include "bvp/winding.hpp"

namespace bvp {

using nlohmann::json;

namespace {

struct Input {
  Curve curve;
  bool has_curve;
  ClosedPolyline polyline;
};

Input load_input(const RunConfig& c) {
  if (!c.polyline_path.empty()) return {builtin_curve("constant"), false, load_polyline_csv(c.polyline_path)};
  Curve curve = c.builtin.empty() ? load_curve(c.curve_path) : builtin_curve(c.builtin);
  return {curve, true, {}};
}

PlateauOptions plateau_options(const RunConfig& c) {
  PlateauOptions o;
  o.h = c.h;
  o.delta_schedule = c.delta_schedule;
  o.max_iters = c.max_iters;
  return o;
}

ExtensionParams extension_params(const RunConfig& c) { return {c.radius, c.nodes}; }

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

json certificate_json(const PlateauCertificate& c) {
  return {{"lower", c.lower},
          {"upper", c.upper},
          {"delta_schedule", c.delta_schedule},
          {"h", c.h},
          {"boundary_samples", c.boundary_samples},
          {"iterations", c.iterations},
          {"converged", c.converged},
          {"grad_norm", c.grad_norm},
          {"relative_gap", c.relative_gap},
          {"gap_flagged", c.gap_flagged}};
}

json tv_json(const VariationDecomposition& d) {
  return {{"ac_mass", d.ac_mass}, {"jump_mass", d.jump_mass}, {"cantor_mass", d.cantor_mass}, {"total", d.total}};
}

json energy_json(const EnergyReport& r) {
  return {{"graph_area_term", r.graph_area_term},
          {"singular_term", r.singular_term},
          {"plateau", certificate_json(r.plateau)},
          {"relaxed_area_lower", r.relaxed_area_lower},
          {"relaxed_area_upper", r.relaxed_area_upper},
          {"tvj_lower", r.tvj_lower},
          {"tvj_upper", r.tvj_upper},
          {"radius", r.radius},
          {"nodes", r.nodes},
          {"origin_value", "centroid"}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

struct Outcome {
  json result;
  std::string csv;
  std::string curve_svg;
  std::string mesh_svg;
  bool converged = true;
  std::string summary;
};

Outcome do_tv(const RunConfig&, const Input& in) {
  const VariationDecomposition d = total_variation(in.curve);
  Outcome o;
  o.result = tv_json(d);
  o.csv = "ac_mass,jump_mass,cantor_mass,total\n" + num(d.ac_mass) + "," + num(d.jump_mass) + "," +
          num(d.cantor_mass) + "," + num(d.total) + "\n";
  o.summary = "TV = (" + num(d.ac_mass) + ", " + num(d.jump_mass) + ", " + num(d.cantor_mass) + ", " + num(d.total) + ")";
  return o;
}

Outcome do_complete(const RunConfig& c, const Input& in) {
  const std::size_t n = c.vertices ? c.vertices : default_boundary_samples(c.h);
  const CompletedCurve cc = completed_curve(in.curve, n);
  Outcome o;
  o.result = {{"vertices", cc.polyline.size()},
              {"length", cc.polyline.length()},
              {"total_variation", total_variation(in.curve).total},
              {"winding_area", winding_area(cc.polyline)}};
  o.csv = "index,x,y,piece,fraction\n";
  for (std::size_t i = 0; i < cc.polyline.size(); ++i) {
    o.csv += std::to_string(i) + "," + num(cc.polyline.vertex(i).x) + "," + num(cc.polyline.vertex(i).y) + "," +
             std::to_string(cc.tags[i].piece) + "," + num(cc.tags[i].fraction) + "\n";
  }
  if (c.emit_svg) o.curve_svg = curve_svg(cc.polyline);
  o.summary = "completed curve: " + std::to_string(cc.polyline.size()) + " vertices, length " + num(cc.polyline.length());
  return o;
}

json stages_json(const std::vector<StageReport>& stages) {
  json a = json::array();
  for (const StageReport& s : stages)
    a.push_back({{"delta", s.delta}, {"iterations", s.iterations}, {"energy", s.energy},
                 {"grad_norm", s.grad_norm}, {"converged", s.converged}, {"stalled", s.stalled}});
  return a;
}

Outcome do_plateau(const RunConfig& c, const Input& in) {
  const PlateauOptions opts = plateau_options(c);
  const PlateauSolution sol = in.has_curve ? plateau_solve(in.curve, opts) : plateau_solve(in.polyline, opts);
  const GridEstimate grid = winding_area_grid(sol.boundary, c.grid_resolution, c.seed);
  Outcome o;
  o.result = certificate_json(sol.certificate);
  o.result["grid_oracle"] = {{"value", grid.value}, {"standard_error", grid.standard_error},
                             {"samples", grid.samples}, {"resolution", c.grid_resolution}};
  o.result["filler"] = {{"vertices", sol.filler.mesh.vertices.size()},
                        {"triangles", sol.filler.mesh.triangles.size()},
                        {"jacobian_tv", jacobian_tv(sol.filler)},
                        {"area_functional", area_functional(sol.filler)}};
  o.result["stages"] = stages_json(sol.stages);
  o.csv = "delta,iterations,energy,grad_norm,converged,stalled\n";
  for (const StageReport& st : sol.stages) {
    o.csv += num(st.delta) + "," + std::to_string(st.iterations) + "," + num(st.energy) + "," + num(st.grad_norm) +
             "," + (st.converged ? "true" : "false") + "," + (st.stalled ? "true" : "false") + "\n";
  }
  if (c.emit_svg) {
    o.curve_svg = curve_svg(sol.boundary);
    o.mesh_svg = mesh_svg(sol.filler);
  }
  o.converged = sol.certificate.converged;
  o.summary = "P in [" + num(sol.certificate.lower) + ", " + num(sol.certificate.upper) + "]" +
              (sol.certificate.gap_flagged ? " (gap above threshold)" : "");
  return o;
}

Outcome do_area(const RunConfig& c, const Input& in) {
  const PlateauSolution sol = plateau_solve(in.curve, plateau_options(c));
  const EnergyReport r = relaxed_area(in.curve, extension_params(c), sol.certificate);
  Outcome o;
  o.result = energy_json(r);
  o.csv = "graph_area_term,singular_term,plateau_lower,plateau_upper,relaxed_area_lower,relaxed_area_upper\n" +
          num(r.graph_area_term) + "," + num(r.singular_term) + "," + num(r.plateau.lower) + "," +
          num(r.plateau.upper) + "," + num(r.relaxed_area_lower) + "," + num(r.relaxed_area_upper) + "\n";
  if (c.emit_svg) {
    o.curve_svg = curve_svg(sol.boundary);
    o.mesh_svg = mesh_svg(sample_extension(in.curve, sol.filler.mesh.scaled(c.radius), extension_params(c)));
  }
  o.converged = r.plateau.converged;
  o.summary = "relaxed area in [" + num(r.relaxed_area_lower) + ", " + num(r.relaxed_area_upper) + "]";
  return o;
}

Outcome do_tangential(const RunConfig& c, const Input& in) {
  const double v = tangential_variation(in.curve, c.eps, extension_params(c));
  Outcome o;
  o.result = {{"eps", c.eps}, {"radius", c.radius}, {"tangential_variation", v},
              {"total_variation_Du", total_variation_Du(in.curve, extension_params(c))}};
  o.csv = "eps,radius,tangential_variation\n" + num(c.eps) + "," + num(c.radius) + "," + num(v) + "\n";
  o.summary = "tangential variation " + num(v);
  return o;
}

Outcome do_recovery(const RunConfig& c, const Input& in) {
  const PlateauSolution sol = plateau_solve(in.curve, plateau_options(c));
  const SequenceReport rep = strict_convergence_report(in.curve, extension_params(c), c.ks, sol, c.h);
  Outcome o;
  json rows = json::array();
  o.csv = "k,l1_error,tv,area,jacobian_tv\n";
  for (std::size_t i = 0; i < rep.ks.size(); ++i) {
    rows.push_back({{"k", rep.ks[i]}, {"l1_error", rep.l1_errors[i]}, {"tv", rep.tv_values[i]},
                    {"area", rep.area_values[i]}, {"jacobian_tv", rep.jacobian_tv_values[i]}});
    o.csv += std::to_string(rep.ks[i]) + "," + num(rep.l1_errors[i]) + "," + num(rep.tv_values[i]) + "," +
             num(rep.area_values[i]) + "," + num(rep.jacobian_tv_values[i]) + "\n";
  }
  o.result = {{"rows", rows},
              {"tv_target", rep.tv_target},
              {"filler_jacobian_tv", rep.filler_jacobian_tv},
              {"relaxed", energy_json(rep.relaxed)},
              {"tolerances", {{"tv_rel", rep.tolerances.tv_rel}, {"l1_abs", rep.tolerances.l1_abs},
                              {"area_rel", rep.tolerances.area_rel}, {"jacobian_rel", rep.tolerances.jacobian_rel}}},
              {"flags", {{"tv_never_exceeds", rep.tv_never_exceeds}, {"tv_nondecreasing", rep.tv_nondecreasing},
                         {"l1_nonincreasing", rep.l1_nonincreasing}, {"tv_converged", rep.tv_converged},
                         {"l1_converged", rep.l1_converged}, {"area_converged", rep.area_converged},
                         {"jacobian_preserved", rep.jacobian_preserved}}},
              {"passed", rep.passed()}};
  if (c.emit_svg) {
    o.curve_svg = curve_svg(sol.boundary);
    o.mesh_svg = mesh_svg(recovery_sequence(in.curve, extension_params(c), c.ks.back(), sol, c.h).map);
  }
  o.converged = sol.certificate.converged;
  o.summary = std::string("strict convergence checks ") + (rep.passed() ? "passed" : "FAILED");
  return o;
}

Outcome do_slice(const RunConfig& c, const Input& in) {
  const SliceReport rep = slicing_check(in.curve, extension_params(c), c.eps, c.n_radii);
  Outcome o;
  o.result = {{"eps", c.eps}, {"n_radii", c.n_radii}, {"integrated", rep.integrated},
              {"exact", rep.exact}, {"relative_error", rep.relative_error}};
  o.csv = "radius,samples,slice_tv\n";
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    o.csv += num(rep.radii[i]) + "," + std::to_string(rep.samples[i]) + "," + num(rep.slice_tv[i]) + "\n";
  o.summary = "slice integral " + num(rep.integrated) + " vs " + num(rep.exact) + ", relative error " +
              num(rep.relative_error);
  return o;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"tv", "complete", "plateau", "area", "tangential", "verify-recovery", "slice-check"};
  return c;
}

void check_config(const RunConfig& c) {
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end())
    throw ConfigError("command: unknown command '" + c.command + "'");
  const int sources = !c.curve_path.empty() + !c.builtin.empty() + !c.polyline_path.empty();
  if (sources != 1) throw ConfigError("curve: give exactly one of --curve, --builtin, --polyline");
  if (!c.polyline_path.empty() && c.command != "plateau")
    throw ConfigError("polyline: a polyline input is only accepted by the plateau command");
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) throw ConfigError("radius: must be finite and positive");
  if (!(c.h > 0.0 && c.h < 1.0)) throw ConfigError("h: must lie in (0, 1)");
  if (c.nodes < 64 || c.nodes % 2) throw ConfigError("nodes: must be even and at least 64");
  for (std::size_t i = 0; i < c.delta_schedule.size(); ++i) {
    if (!(c.delta_schedule[i] > 0.0) || (i && !(c.delta_schedule[i] < c.delta_schedule[i - 1])))
      throw ConfigError("deltas: must be positive and strictly decreasing");
  }
  if (c.grid_resolution < 16) throw ConfigError("grid-resolution: must be at least 16");
  if (c.vertices != 0 && c.vertices < 8) throw ConfigError("vertices: must be at least 8");
  if (!(c.eps >= 0.0 && c.eps < c.radius)) throw ConfigError("eps: must satisfy 0 <= eps < radius");
  if (c.n_radii == 0) throw ConfigError("n-radii: must be positive");
  if (c.ks.empty()) throw ConfigError("ks: need at least one value");
  for (std::size_t i = 0; i < c.ks.size(); ++i) {
    if (c.ks[i] < 2 || (i && c.ks[i] <= c.ks[i - 1])) throw ConfigError("ks: must be increasing and >= 2");
  }
}

std::filesystem::path resolved_output_dir(const RunConfig& c) {
  if (!c.output_dir.empty()) return c.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "bvplateau_output";
}

json config_to_json(const RunConfig& c) {
  json input;
  if (!c.curve_path.empty()) input = {{"curve", c.curve_path}};
  if (!c.builtin.empty()) input = {{"builtin", c.builtin}};
  if (!c.polyline_path.empty()) input = {{"polyline", c.polyline_path}};
  return {{"command", c.command},
          {"input", input},
          {"radius", c.radius},
          {"h", c.h},
          {"nodes", c.nodes},
          {"delta_schedule", c.delta_schedule},
          {"max_iters", c.max_iters},
          {"emit_svg", c.emit_svg},
          {"seed", c.seed},
          {"grid_resolution", c.grid_resolution},
          {"vertices", c.vertices},
          {"eps", c.eps},
          {"n_radii", c.n_radii},
          {"ks", c.ks}};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Outcome o;
  std::filesystem::path dir;
  try {
    check_config(c);
    dir = resolved_output_dir(c);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw ConfigError("output: cannot create directory " + dir.string());
    const Input in = load_input(c);
    if (c.command == "tv") o = do_tv(c, in);
    else if (c.command == "complete") o = do_complete(c, in);
    else if (c.command == "plateau") o = do_plateau(c, in);
    else if (c.command == "area") o = do_area(c, in);
    else if (c.command == "tangential") o = do_tangential(c, in);
    else if (c.command == "verify-recovery") o = do_recovery(c, in);
    else o = do_slice(c, in);
  } catch (const ValidationError& e) {
    err << "error: invalid curve (" << e.field() << "): " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  try {
    json report = {{"config", config_to_json(c)}, {"result", o.result}, {"converged", o.converged}};
    write_file(dir / "report.json", report.dump(2) + "\n");
    write_file(dir / "report.csv", o.csv);
    if (!o.curve_svg.empty()) write_file(dir / "curve.svg", o.curve_svg);
    if (!o.mesh_svg.empty()) write_file(dir / "mesh.svg", o.mesh_svg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  out << o.summary << "\n";
  if (!o.converged) {
    err << "warning: Plateau minimization did not reach the gradient tolerance\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace bvp
