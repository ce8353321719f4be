#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geoswarm {

// SHA-1 of "blob <len>\0<content>", hex-encoded: the same content id git
// assigns the config file, stable across platforms.
std::string git_blob_hash(const std::string& content);

// full "%.17g" formatting so CSV round-trips doubles exactly
std::string fmt_double(double v);

struct RunManifest {
  std::string config_text;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string command;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
  std::string abort_message;  // empty when the run completed
  int exit_code = 0;

  std::string to_json() const;
};

std::string iso8601_now();

}  // namespace geoswarm
