#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "geoswarm/errors.hpp"
#include "geoswarm/parallel.hpp"

namespace {

int env_threads() {
  if (const char* env = std::getenv("GEOSWARM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return geoswarm::default_thread_count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geoswarm: intrinsic aggregation dynamics on manifolds"};
  app.require_subcommand(1);

  geoswarm::cli::CommonOpts common;
  common.threads = env_threads();
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub, bool needs_out = true) {
    sub->add_option("--config", common.config_path, "JSON config path")->required();
    if (needs_out) sub->add_option("--out", common.out_dir, "output directory")->required();
    sub->add_option("--seed", seed_value, "override the config seed")
        ->each([&](const std::string&) { common.seed_override = seed_value; });
    sub->add_option("--threads", common.threads, "worker threads (default: GEOSWARM_THREADS or hardware)");
  };

  auto* sim = app.add_subcommand("simulate", "run one simulation; writes trajectory.csv + diagnostics.json");
  add_common(sim);
  auto* scan = app.add_subcommand("consensus-scan", "sweep (potential, r, seed) cells; writes scan.csv");
  add_common(scan);
  auto* mf = app.add_subcommand("meanfield", "empirical-measure convergence table; writes meanfield.csv");
  add_common(mf);
  auto* audit = app.add_subcommand("audit", "randomized inequality audits; writes audit.json");
  add_common(audit);

  geoswarm::cli::ConstantsOpts copts;
  auto* constants = app.add_subcommand("constants", "analysis constants for a potential; writes constants.json");
  constants->add_option("--profile", copts.profile, "half_quadratic | lohe | power_law")->required();
  constants->add_option("--q", copts.q, "power-law exponent");
  constants->add_option("--c", copts.c, "power-law scale");
  constants->add_option("--epsilon", copts.epsilon, "domain parameter in (0, pi/2)")->required();
  constants->add_option("--grid", copts.grid, "grid resolution (default 100000)");
  constants->add_option("--r-times", copts.r_times, "comma-separated times for the r(t) table");
  constants->add_option("--out", copts.out_dir, "output directory (optional; also prints to stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return geoswarm::cli::cmd_simulate(common);
    if (scan->parsed()) return geoswarm::cli::cmd_consensus_scan(common);
    if (mf->parsed()) return geoswarm::cli::cmd_meanfield(common);
    if (audit->parsed()) return geoswarm::cli::cmd_audit(common);
    if (constants->parsed()) return geoswarm::cli::cmd_constants(copts);
  } catch (const geoswarm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const geoswarm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
