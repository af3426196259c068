#include "bvp/curve_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace bvp {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& msg) {
  throw ValidationError(ValidationError::Code::malformed, field, msg);
}

const json& member(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) schema_error(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(field + "." + key, "missing key");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) schema_error(field, "expected a number");
  return v.get<double>();
}

Vec2 point(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) schema_error(field, "expected [x, y]");
  return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

Path path_from(const json& v, const std::string& field) {
  const json& kind = member(v, "kind", field);
  if (kind == "polyline") {
    const json& pts = member(v, "points", field);
    if (!pts.is_array() || pts.empty()) schema_error(field + ".points", "expected a nonempty array");
    std::vector<Vec2> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      points.push_back(point(pts[i], field + ".points[" + std::to_string(i) + "]"));
    }
    return Path(PolylinePath{std::move(points)});
  }
  if (kind == "circle_arc") {
    CircleArcPath c;
    c.center = point(member(v, "center", field), field + ".center");
    c.radius = number(member(v, "radius", field), field + ".radius");
    c.phi0 = number(member(v, "phi0", field), field + ".phi0");
    c.phi1 = number(member(v, "phi1", field), field + ".phi1");
    if (!(c.radius >= 0.0)) schema_error(field + ".radius", "radius must be >= 0");
    return Path(c);
  }
  if (kind == "point") return Path::point(point(member(v, "at", field), field + ".at"));
  schema_error(field + ".kind", "unknown path kind");
}

CumulativeVariation cumulative_from(const json& v, const std::string& field) {
  const json& kind = member(v, "kind", field);
  if (kind == "linear") return CumulativeVariation::linear(number(member(v, "total", field), field + ".total"));
  if (kind == "sampled") {
    const json& s = member(v, "samples", field);
    if (!s.is_array()) schema_error(field + ".samples", "expected an array");
    std::vector<double> samples;
    for (std::size_t i = 0; i < s.size(); ++i) {
      samples.push_back(number(s[i], field + ".samples[" + std::to_string(i) + "]"));
    }
    return CumulativeVariation::sampled(std::move(samples));
  }
  schema_error(field + ".kind", "unknown cumulative kind");
}

json to_json(Vec2 p) { return json::array({p.x, p.y}); }

json to_json(const Path& path) {
  if (const auto* p = std::get_if<PolylinePath>(&path.shape())) {
    json pts = json::array();
    for (Vec2 q : p->points) pts.push_back(to_json(q));
    return {{"kind", "polyline"}, {"points", pts}};
  }
  if (const auto* c = std::get_if<CircleArcPath>(&path.shape())) {
    return {{"kind", "circle_arc"}, {"center", to_json(c->center)}, {"radius", c->radius},
            {"phi0", c->phi0}, {"phi1", c->phi1}};
  }
  return {{"kind", "point"}, {"at", to_json(std::get<PointPath>(path.shape()).at)}};
}

json to_json(const CumulativeVariation& c) {
  if (c.kind() == CumulativeVariation::Kind::linear) return {{"kind", "linear"}, {"total", c.total()}};
  return {{"kind", "sampled"}, {"samples", c.samples()}};
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) schema_error(file.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Arc make_arc(double t0, double t1, Path path, double ac_total,
             CumulativeVariation cantor = CumulativeVariation::linear(0.0)) {
  Arc a;
  a.theta0 = t0;
  a.theta1 = t1;
  a.path = std::move(path);
  a.ac = CumulativeVariation::linear(ac_total);
  a.cantor = std::move(cantor);
  return a;
}

}  // namespace

Curve curve_from_json(const json& doc) {
  const json& list = member(doc, "pieces", "document");
  if (!list.is_array()) schema_error("pieces", "expected an array");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string field = "pieces[" + std::to_string(i) + "]";
    const json& entry = list[i];
    const json& type = member(entry, "type", field);
    if (type == "arc") {
      Arc a = make_arc(number(member(entry, "theta0", field), field + ".theta0"),
                       number(member(entry, "theta1", field), field + ".theta1"),
                       path_from(member(entry, "path", field), field + ".path"), 0.0);
      a.ac = cumulative_from(member(entry, "ac", field), field + ".ac");
      a.cantor = cumulative_from(member(entry, "cantor", field), field + ".cantor");
      pieces.emplace_back(std::move(a));
    } else if (type == "jump") {
      Jump j;
      j.theta = number(member(entry, "theta", field), field + ".theta");
      j.left = point(member(entry, "left", field), field + ".left");
      j.right = point(member(entry, "right", field), field + ".right");
      pieces.emplace_back(j);
    } else {
      schema_error(field + ".type", "expected \"arc\" or \"jump\"");
    }
  }
  return validate(std::move(pieces));
}

Curve parse_curve(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    schema_error("line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
  }
  return curve_from_json(doc);
}

Curve load_curve(const std::filesystem::path& file) { return parse_curve(read_file(file)); }

json curve_to_json(const Curve& curve) {
  json pieces = json::array();
  for (const Piece& p : curve.pieces()) {
    if (const auto* a = std::get_if<Arc>(&p)) {
      pieces.push_back({{"type", "arc"},
                        {"theta0", wrap_angle(a->theta0)},
                        {"theta1", wrap_angle(a->theta1)},
                        {"path", to_json(a->path)},
                        {"ac", to_json(a->ac)},
                        {"cantor", to_json(a->cantor)}});
    } else {
      const Jump& j = std::get<Jump>(p);
      pieces.push_back(
          {{"type", "jump"}, {"theta", j.theta}, {"left", to_json(j.left)}, {"right", to_json(j.right)}});
    }
  }
  return {{"pieces", pieces}};
}

ClosedPolyline parse_polyline_csv(std::string_view text) {
  std::vector<Vec2> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto comma = line.find(',');
    const std::string field = "line " + std::to_string(lineno);
    if (comma == std::string::npos) schema_error(field, "expected x,y");
    try {
      std::size_t used = 0;
      const double x = std::stod(line.substr(0, comma));
      const std::string rest = line.substr(comma + 1);
      const double y = std::stod(rest, &used);
      if (rest.find_first_not_of(" \t\r", used) != std::string::npos) schema_error(field, "trailing characters");
      if (!std::isfinite(x) || !std::isfinite(y)) schema_error(field, "non-finite coordinate");
      pts.push_back({x, y});
    } catch (const std::logic_error&) {
      schema_error(field, "cannot parse number");
    }
  }
  return ClosedPolyline(std::move(pts));
}

ClosedPolyline load_polyline_csv(const std::filesystem::path& file) {
  return parse_polyline_csv(read_file(file));
}

double cantor_function(std::size_t i, int depth) {
  std::size_t scale = 1;
  for (int d = 0; d < depth; ++d) scale *= 3;
  if (i >= scale) return 1.0;
  double value = 0.0;
  double weight = 0.5;
  for (int d = 0; d < depth; ++d) {
    scale /= 3;
    const std::size_t digit = i / scale;
    i %= scale;
    if (digit == 1) return value + weight;
    if (digit == 2) value += weight;
    weight *= 0.5;
  }
  return value;
}

Curve builtin_curve(std::string_view name) {
  constexpr double pi = std::numbers::pi;
  std::vector<Piece> pieces;
  if (name == "vortex") {
    pieces.emplace_back(make_arc(0.0, kTwoPi, Path(CircleArcPath{{0.0, 0.0}, 1.0, 0.0, kTwoPi}), kTwoPi));
  } else if (name == "triple") {
    // Equilateral triangle of side 1, counterclockwise.
    const double r = 1.0 / std::sqrt(3.0);
    const Vec2 v[3] = {polar(r, pi / 2), polar(r, pi / 2 + kTwoPi / 3), polar(r, pi / 2 + 2 * kTwoPi / 3)};
    for (int i = 0; i < 3; ++i) {
      const double t0 = kTwoPi * i / 3.0;
      const double t1 = kTwoPi * (i + 1) / 3.0;
      pieces.emplace_back(make_arc(t0, t1, Path::point(v[i]), 0.0));
      pieces.emplace_back(Jump{i == 2 ? 0.0 : t1, v[i], v[(i + 1) % 3]});
    }
  } else if (name == "cantor-arc") {
    constexpr int depth = 6;
    const std::size_t cells = 729;
    std::vector<double> samples(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) samples[i] = pi / 2 * cantor_function(i, depth);
    pieces.emplace_back(make_arc(0.0, kTwoPi, Path(CircleArcPath{{0.0, 0.0}, 1.0, 0.0, pi / 2}), 0.0,
                                 CumulativeVariation::sampled(std::move(samples))));
  } else if (name == "figure-eight") {
    std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {0, -1}, {-1, -1}, {-1, 0}, {0, 0}};
    pieces.emplace_back(make_arc(0.0, kTwoPi, Path(PolylinePath{std::move(pts)}), 8.0));
  } else if (name == "constant") {
    pieces.emplace_back(make_arc(0.0, kTwoPi, Path::point({0.0, 0.0}), 0.0));
  } else {
    schema_error("builtin", "unknown builtin curve '" + std::string(name) + "'");
  }
  return validate(std::move(pieces));
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"vortex", "triple", "cantor-arc", "figure-eight", "constant"};
  return names;
}

}  // namespace bvp
