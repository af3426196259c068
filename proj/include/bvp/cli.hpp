#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bvp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitFailure = 1;

inline constexpr const char* kOutputDirEnv = "BVPLATEAU_OUTPUT_DIR";

struct RunConfig {
  std::string command;        // tv, complete, plateau, area, tangential, verify-recovery, slice-check
  std::string curve_path;     // curve spec file
  std::string builtin;        // or a named curve
  std::string polyline_path;  // or an x,y CSV polyline (plateau only)
  double radius = 1.0;
  double h = 0.05;
  std::size_t nodes = 4096;
  std::vector<double> delta_schedule{1e-1, 1e-2, 1e-3, 1e-4};
  std::size_t max_iters = 20000;
  std::filesystem::path output_dir;  // empty: environment variable, then "bvplateau_output"
  bool emit_svg = true;
  std::uint64_t seed = 1;
  int grid_resolution = 512;
  std::size_t vertices = 0;  // completed-curve target, 0 for the default of h
  double eps = 0.5;
  std::size_t n_radii = 256;
  std::vector<int> ks{2, 4, 8, 16, 32};
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& commands();

/// Throws ConfigError naming the offending option.
void check_config(const RunConfig& config);

/// Output directory after applying the environment default.
std::filesystem::path resolved_output_dir(const RunConfig& config);

nlohmann::json config_to_json(const RunConfig& config);

/// Runs one command, writes report.json (plus report.csv and SVGs where they
/// apply) and prints a short summary to `out`. Diagnostics go to `err`.
/// Returns 0, 2 on invalid input, 3 when the Plateau minimization did not
/// converge (reports are still written), 1 on any other failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bvp
