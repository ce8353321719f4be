#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "geoswarm/dynamics.hpp"

namespace geoswarm {

// Parsed and validated run configuration. One JSON document with sections
// {manifold, potential, initial, integrator, experiment}; see README for the
// schema. Parse errors throw ConfigError naming the offending field.
struct RunConfig {
  Manifold manifold;
  Potential potential;
  std::optional<std::variant<EmpiricalMeasure, DiskSpec>> initial;
  double h = 1e-2;
  double t_end = 10.0;
  Scheme scheme = Scheme::GeodesicEuler;
  int record_every = 1;
  std::uint64_t seed = 0;
  std::optional<double> z_limit;
  nlohmann::json experiment;  // command-specific section, parsed by the command
  std::string raw_text;       // exact file contents, used for the manifest hash
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

Manifold parse_manifold(const nlohmann::json& j);
Potential parse_potential(const nlohmann::json& j);

// requires cfg.initial to be present
SimConfig to_sim_config(const RunConfig& cfg);

}  // namespace geoswarm
