#include <CLI11.hpp>
#include <iostream>

#include "bvp/cli.hpp"
#include "bvp/curve_io.hpp"

int main(int argc, char** argv) {
  bvp::RunConfig config;
  std::string output;
  bool no_svg = false;

  CLI::App app{"Relaxed area and Plateau bounds for BV data on the circle"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"tv", "total variation decomposition of the datum"},
      {"complete", "completed curve (jumps bridged by segments)"},
      {"plateau", "winding-area lower and discrete upper bound for the Plateau value"},
      {"area", "relaxed area of the homogeneous extension"},
      {"tangential", "tangential variation on an annulus"},
      {"verify-recovery", "strict convergence and recovery sequence checks"},
      {"slice-check", "integrated slice variation against the tangential variation"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--curve", config.curve_path, "curve spec file (JSON)");
    sub->add_option("--builtin", config.builtin, "named curve")
        ->check(CLI::IsMember(bvp::builtin_names()));
    if (name == "plateau") sub->add_option("--polyline", config.polyline_path, "x,y CSV polyline");
    sub->add_option("--radius", config.radius, "extension radius")->capture_default_str();
    sub->add_option("--mesh-size", config.h, "target mesh edge length h")->capture_default_str();
    sub->add_option("--nodes", config.nodes, "angular quadrature nodes")->capture_default_str();
    sub->add_option("--deltas", config.delta_schedule, "smoothing schedule")->capture_default_str();
    sub->add_option("--max-iters", config.max_iters, "iterations per smoothing stage")->capture_default_str();
    sub->add_option("--output", output, std::string("output directory (default: $") + bvp::kOutputDirEnv +
                                            " or bvplateau_output)");
    sub->add_flag("--no-svg", no_svg, "skip SVG figures");
    sub->add_option("--seed", config.seed, "grid oracle seed")->capture_default_str();
    sub->add_option("--grid-resolution", config.grid_resolution, "grid oracle resolution")->capture_default_str();
    sub->add_option("--vertices", config.vertices, "completed-curve vertex target (0: from h)")->capture_default_str();
    sub->add_option("--eps", config.eps, "inner radius of the annulus")->capture_default_str();
    sub->add_option("--n-radii", config.n_radii, "radii for the slicing check")->capture_default_str();
    sub->add_option("--ks", config.ks, "recovery indices")->capture_default_str();
    sub->callback([&config, name = name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bvp::kExitInvalid;
  }
  config.output_dir = output;
  config.emit_svg = !no_svg;
  return bvp::run(config, std::cout, std::cerr);
}
