#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace geoswarm::cli {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  int threads = 1;
};

int cmd_simulate(const CommonOpts& opts);
int cmd_consensus_scan(const CommonOpts& opts);
int cmd_meanfield(const CommonOpts& opts);
int cmd_audit(const CommonOpts& opts);

struct ConstantsOpts {
  std::string profile;
  double q = 1.0;
  double c = 1.0;
  double epsilon = 0.0;
  int grid = 100000;
  std::string r_times = "0,1";
  std::string out_dir;
};

int cmd_constants(const ConstantsOpts& opts);

}  // namespace geoswarm::cli
