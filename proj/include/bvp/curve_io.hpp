#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bvp/curve.hpp"
#include "bvp/polyline.hpp"

namespace bvp {

/// Builds and validates a curve from a spec document {"pieces": [...]}.
/// Schema and JSON syntax problems raise ValidationError(malformed) whose
/// field names the offending entry (or "line L, column C" for syntax).
Curve curve_from_json(const nlohmann::json& doc);
Curve parse_curve(std::string_view text);
Curve load_curve(const std::filesystem::path& file);

nlohmann::json curve_to_json(const Curve& curve);

/// "x,y" per line; blank lines and lines starting with '#' are skipped.
/// The polyline is closed implicitly.
ClosedPolyline parse_polyline_csv(std::string_view text);
ClosedPolyline load_polyline_csv(const std::filesystem::path& file);

/// Named test data: vortex, triple, cantor-arc, figure-eight, constant.
Curve builtin_curve(std::string_view name);
const std::vector<std::string>& builtin_names();

/// Devil's staircase at i / 3^depth, exact for the finite ternary expansion.
double cantor_function(std::size_t i, int depth);

}  // namespace bvp
