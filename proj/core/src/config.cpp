#include "geoswarm/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace geoswarm {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field + ": " + msg);
}

double get_number(const json& j, const std::string& field, const std::string& key) {
  if (!j.contains(key)) fail(field + "." + key, "missing");
  if (!j[key].is_number()) fail(field + "." + key, "must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& field, const std::string& key) {
  if (!j.contains(key)) fail(field + "." + key, "missing");
  if (!j[key].is_number_integer()) fail(field + "." + key, "must be an integer");
  return j[key].get<int>();
}

std::string get_string(const json& j, const std::string& field, const std::string& key) {
  if (!j.contains(key)) fail(field + "." + key, "missing");
  if (!j[key].is_string()) fail(field + "." + key, "must be a string");
  return j[key].get<std::string>();
}

// schema-level domain rules; the manifold constructors re-check, and we map
// their errors to field-qualified messages here
Manifold parse_manifold_impl(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "must be an object");
  const std::string type = get_string(j, field, "type");
  try {
    if (type == "sphere") {
      const int dim = get_int(j, field, "dim");
      const double eps = get_number(j, field, "epsilon");
      if (!(eps > 0.0 && eps < kPi / 2.0)) fail(field + ".epsilon", "must lie in (0, pi/2)");
      return Manifold::sphere_hemisphere(dim, eps);
    }
    if (type == "circle") {
      const double eps = get_number(j, field, "epsilon");
      if (!(eps > 0.0 && eps < kPi / 2.0)) fail(field + ".epsilon", "must lie in (0, pi/2)");
      return Manifold::circle_arc(eps);
    }
    if (type == "cylinder") {
      const double eps = get_number(j, field, "epsilon");
      if (!(eps > 0.0 && eps < kPi)) fail(field + ".epsilon", "must lie in (0, pi)");
      return Manifold::cylinder_band(eps);
    }
    if (type == "euclidean") return Manifold::euclidean(get_int(j, field, "dim"));
    if (type == "product") {
      if (!j.contains("left") || !j.contains("right"))
        fail(field, "product requires left and right");
      return Manifold::product(parse_manifold_impl(j["left"], field + ".left"),
                               parse_manifold_impl(j["right"], field + ".right"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(field, e.what());
  }
  fail(field + ".type", "unknown manifold type '" + type + "'");
}

}  // namespace

Manifold parse_manifold(const json& j) { return parse_manifold_impl(j, "manifold"); }

Potential parse_potential(const json& j) {
  if (!j.is_object()) fail("potential", "must be an object");
  const std::string profile = get_string(j, "potential", "profile");
  if (profile == "power_law") {
    const double q = get_number(j, "potential", "q");
    const double c = j.contains("c") ? get_number(j, "potential", "c") : 1.0;
    if (!(q >= 1.0)) fail("potential.q", "must be >= 1");
    if (!(c > 0.0)) fail("potential.c", "must be > 0");
    return Potential::power_law(q, c);
  }
  if (profile == "half_quadratic") return Potential::half_quadratic();
  if (profile == "lohe") return Potential::lohe();
  fail("potential.profile", "unknown profile '" + profile + "'");
}

namespace {

std::variant<EmpiricalMeasure, DiskSpec> parse_initial(const json& j, const Manifold& m) {
  if (!j.is_object()) fail("initial", "must be an object");
  const std::string kind = get_string(j, "initial", "kind");
  if (kind == "disk") {
    DiskSpec spec{m.center(), 0.0, 0};
    spec.radius = get_number(j, "initial", "radius");
    spec.n = get_int(j, "initial", "n");
    if (spec.n < 1) fail("initial.n", "must be >= 1");
    if (!(spec.radius >= 0.0)) fail("initial.radius", "must be nonnegative");
    const auto kind_m = m.kind();
    if ((kind_m == ManifoldKind::SphereHemisphere || kind_m == ManifoldKind::CircleArc) &&
        spec.radius >= kPi / 2.0 - m.epsilon())
      fail("initial.radius", "disk radius must be < pi/2 - epsilon");
    if (j.contains("center")) {
      if (!j["center"].is_array()) fail("initial.center", "must be a coordinate array");
      std::vector<double> c = j["center"].get<std::vector<double>>();
      try {
        spec.center = m.point(std::move(c));
      } catch (const Error& e) {
        fail("initial.center", e.what());
      }
      if (!m.contains(spec.center)) fail("initial.center", "outside the admissible domain");
    }
    return spec;
  }
  if (kind == "points") {
    if (!j.contains("points") || !j["points"].is_array())
      fail("initial.points", "must be an array of coordinate arrays");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
      try {
        pts.push_back(m.point(j["points"][i].get<std::vector<double>>()));
      } catch (const Error& e) {
        fail("initial.points[" + std::to_string(i) + "]", e.what());
      }
    }
    try {
      if (j.contains("masses")) {
        auto masses = j["masses"].get<std::vector<double>>();
        return EmpiricalMeasure::weighted(m, std::move(pts), std::move(masses));
      }
      return EmpiricalMeasure::uniform(m, std::move(pts));
    } catch (const Error& e) {
      fail("initial", e.what());
    }
  }
  fail("initial.kind", "must be 'disk' or 'points'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  if (!j.contains("manifold")) throw ConfigError("manifold: missing section");
  if (!j.contains("potential")) throw ConfigError("potential: missing section");

  Manifold m = parse_manifold(j["manifold"]);
  Potential p = parse_potential(j["potential"]);

  RunConfig cfg{.manifold = std::move(m),
                .potential = std::move(p),
                .initial = std::nullopt,
                .experiment = json::object(),
                .raw_text = text};

  if (j.contains("initial")) cfg.initial = parse_initial(j["initial"], cfg.manifold);

  if (j.contains("integrator")) {
    const json& ji = j["integrator"];
    if (!ji.is_object()) throw ConfigError("integrator: must be an object");
    if (ji.contains("h")) cfg.h = get_number(ji, "integrator", "h");
    if (!(cfg.h > 0.0)) throw ConfigError("integrator.h: must be positive");
    if (ji.contains("t_end")) cfg.t_end = get_number(ji, "integrator", "t_end");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("integrator.t_end: must be nonnegative");
    if (ji.contains("record_every")) cfg.record_every = get_int(ji, "integrator", "record_every");
    if (cfg.record_every < 1) throw ConfigError("integrator.record_every: must be >= 1");
    if (ji.contains("scheme")) {
      const std::string s = get_string(ji, "integrator", "scheme");
      if (s == "geodesic_euler")
        cfg.scheme = Scheme::GeodesicEuler;
      else if (s == "rk4_projected")
        cfg.scheme = Scheme::RK4Projected;
      else
        throw ConfigError("integrator.scheme: must be 'geodesic_euler' or 'rk4_projected'");
    }
    if (ji.contains("z_limit")) {
      cfg.z_limit = get_number(ji, "integrator", "z_limit");
      if (!(*cfg.z_limit > 0.0)) throw ConfigError("integrator.z_limit: must be positive");
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("seed: must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("experiment")) cfg.experiment = j["experiment"];
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

SimConfig to_sim_config(const RunConfig& cfg) {
  if (!cfg.initial) throw ConfigError("initial: missing section");
  return SimConfig{.manifold = cfg.manifold,
                   .potential = cfg.potential,
                   .initial = *cfg.initial,
                   .h = cfg.h,
                   .t_end = cfg.t_end,
                   .scheme = cfg.scheme,
                   .record_every = cfg.record_every,
                   .seed = cfg.seed,
                   .threads = 1,
                   .z_limit = cfg.z_limit};
}

}  // namespace geoswarm
