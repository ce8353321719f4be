#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "geoswarm/analysis.hpp"
#include "geoswarm/config.hpp"
#include "geoswarm/manifest.hpp"
#include "geoswarm/parallel.hpp"
#include "geoswarm/rng.hpp"
#include "geoswarm/transport.hpp"

namespace geoswarm::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAborted = 2;
constexpr int kExitAuditViolation = 3;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// manifest is written with empty end fields before the outputs, then finalized
struct ManifestScope {
  RunManifest m;
  fs::path path;

  ManifestScope(const std::string& command, const RunConfig& cfg, const fs::path& out_dir) {
    m.command = command;
    m.config_text = cfg.raw_text;
    m.config_hash = git_blob_hash(cfg.raw_text);
    m.seed = cfg.seed;
    m.started_at = iso8601_now();
    path = out_dir / "manifest.json";
    write_file(path, m.to_json());
  }

  void finish(int exit_code, const std::vector<std::string>& outputs,
              const std::string& abort_msg = "") {
    m.finished_at = iso8601_now();
    m.exit_code = exit_code;
    m.outputs = outputs;
    m.abort_message = abort_msg;
    write_file(path, m.to_json());
  }
};

RunConfig load_config(const CommonOpts& opts) {
  RunConfig cfg = parse_config_file(opts.config_path);
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  return cfg;
}

json step_diag_json(const StepDiagnostics& d) {
  json s;
  s["t"] = d.t;
  s["E_full"] = d.energy_full;
  s["E_offdiag"] = d.energy_offdiag;
  s["dissipation"] = d.dissipation;
  s["diameter"] = d.diameter;
  s["d_max"] = d.disk_radius_max;
  return s;
}

bool has_cylinder_factor(const Manifold& m) {
  if (m.kind() == ManifoldKind::CylinderBand) return true;
  if (m.kind() == ManifoldKind::Product)
    return has_cylinder_factor(m.left()) || has_cylinder_factor(m.right());
  return false;
}

std::string trajectory_csv(const Manifold& m, const TrajectoryRecord& rec) {
  std::ostringstream os;
  os << "t,particle";
  for (int k = 0; k < m.ambient_dim(); ++k) os << ",x" << k;
  const bool chart = m.kind() == ManifoldKind::CylinderBand;
  if (chart) os << ",chart_x,chart_z";
  os << "\n";
  for (std::size_t s = 0; s < rec.times.size(); ++s) {
    const auto& st = rec.states[s];
    for (int i = 0; i < st.size(); ++i) {
      os << fmt_double(rec.times[s]) << "," << i;
      for (double a : st.points()[i].ambient()) os << "," << fmt_double(a);
      if (chart)
        for (double c : st.points()[i].coords()) os << "," << fmt_double(c);
      os << "\n";
    }
  }
  return os.str();
}

double disk_invariance_slack(const RunConfig& cfg) {
  const auto kind = cfg.manifold.kind();
  if (kind != ManifoldKind::SphereHemisphere && kind != ManifoldKind::CircleArc) return 0.0;
  const auto pc = compute_constants(cfg.potential, cfg.manifold.epsilon(), 2000);
  return 10.0 * cfg.h * 2.0 * kPi * pc.c_g_prime;
}

}  // namespace

int cmd_simulate(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  if (!cfg.initial) throw ConfigError("initial: missing section (required by simulate)");
  fs::create_directories(opts.out_dir);
  ManifestScope manifest("simulate", cfg, opts.out_dir);

  SimConfig sim = to_sim_config(cfg);
  sim.threads = opts.threads;
  const TrajectoryRecord rec = simulate(sim);

  const fs::path traj_path = fs::path(opts.out_dir) / "trajectory.csv";
  write_file(traj_path, trajectory_csv(cfg.manifold, rec));

  json diag;
  diag["config_hash"] = git_blob_hash(cfg.raw_text);
  diag["steps"] = json::array();
  for (const auto& d : rec.diagnostics) diag["steps"].push_back(step_diag_json(d));
  if (has_cylinder_factor(cfg.manifold)) {
    json z = json::array();
    for (const auto& d : rec.diagnostics) z.push_back(d.z_extent);
    diag["z_extent"] = z;
  }
  if (rec.aborted()) {
    diag["abort"] = {{"step_index", rec.abort->step_index},
                     {"particle_index", rec.abort->particle_index},
                     {"message", rec.abort->message}};
  } else {
    diag["abort"] = nullptr;
  }
  const fs::path diag_path = fs::path(opts.out_dir) / "diagnostics.json";
  write_file(diag_path, diag.dump(2) + "\n");

  const int code = rec.aborted() ? kExitAborted : kExitOk;
  manifest.finish(code, {traj_path.string(), diag_path.string()},
                  rec.aborted() ? rec.abort->message : "");
  return code;
}

int cmd_consensus_scan(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  const json& ex = cfg.experiment;
  if (!ex.contains("r_grid") || !ex["r_grid"].is_array())
    throw ConfigError("experiment.r_grid: missing or not an array");
  if (!ex.contains("potentials") || !ex["potentials"].is_array())
    throw ConfigError("experiment.potentials: missing or not an array");
  const std::vector<double> r_grid = ex["r_grid"].get<std::vector<double>>();
  const int n = ex.value("n", 50);
  const int num_seeds = ex.value("num_seeds", 1);
  const double tol = ex.value("tol", 1e-3);
  if (n < 1) throw ConfigError("experiment.n: must be >= 1");
  if (num_seeds < 1) throw ConfigError("experiment.num_seeds: must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("experiment.tol: must be positive");

  std::vector<Potential> pots;
  std::vector<std::string> pot_names;
  for (const auto& pj : ex["potentials"]) {
    pots.push_back(parse_potential(pj));
    pot_names.push_back(pots.back().name());
  }
  const auto kind = cfg.manifold.kind();
  const bool spherical =
      kind == ManifoldKind::SphereHemisphere || kind == ManifoldKind::CircleArc;
  for (double r : r_grid) {
    if (!(r >= 0.0)) throw ConfigError("experiment.r_grid: radii must be nonnegative");
    if (spherical && r >= kPi / 2.0 - cfg.manifold.epsilon())
      throw ConfigError("experiment.r_grid: disk radius must be < pi/2 - epsilon");
  }

  fs::create_directories(opts.out_dir);
  ManifestScope manifest("consensus-scan", cfg, opts.out_dir);

  struct Cell {
    std::size_t pot;
    double r;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t pi = 0; pi < pots.size(); ++pi)
    for (double r : r_grid)
      for (int s = 0; s < num_seeds; ++s)
        cells.push_back({pi, r, mix_seed(cfg.seed, cells.size())});

  std::vector<std::string> rows(cells.size());
  parallel_for(static_cast<int>(cells.size()), opts.threads, [&](int idx) {
    const Cell& cell = cells[idx];
    SimConfig sim{.manifold = cfg.manifold,
                  .potential = pots[cell.pot],
                  .initial = DiskSpec{cfg.manifold.center(), cell.r, n},
                  .h = cfg.h,
                  .t_end = cfg.t_end,
                  .scheme = cfg.scheme,
                  .record_every = cfg.record_every,
                  .seed = cell.seed,
                  .threads = 1,
                  .z_limit = cfg.z_limit};
    const auto rec = simulate(sim);
    bool invariant_ok = !rec.aborted();
    if (spherical) {
      const double slack =
          10.0 * cfg.h * 2.0 * kPi *
          compute_constants(pots[cell.pot], cfg.manifold.epsilon(), 2000).c_g_prime;
      for (const auto& d : rec.diagnostics)
        invariant_ok = invariant_ok && d.disk_radius_max <= cell.r + slack;
    }
    std::ostringstream os;
    os << pot_names[cell.pot] << "," << fmt_double(cell.r) << ","
       << fmt_double(cfg.manifold.epsilon()) << "," << n << "," << cell.seed << ",";
    if (rec.aborted()) {
      os << "nan," << fmt_double(rec.diagnostics.back().diameter);
    } else {
      const auto rep = consensus_report(rec, tol);
      os << (rep.time_to_tol ? fmt_double(*rep.time_to_tol) : "nan") << ","
         << fmt_double(rep.final_diameter);
    }
    os << "," << (invariant_ok ? "true" : "false") << "\n";
    rows[idx] = os.str();
  });

  std::ostringstream csv;
  csv << "potential,r,epsilon,n,seed,time_to_tol,final_diameter,invariant_ok\n";
  for (const auto& row : rows) csv << row;
  const fs::path path = fs::path(opts.out_dir) / "scan.csv";
  write_file(path, csv.str());
  manifest.finish(kExitOk, {path.string()});
  return kExitOk;
}

int cmd_meanfield(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  if (!cfg.initial || !std::holds_alternative<DiskSpec>(*cfg.initial))
    throw ConfigError("initial: meanfield requires a disk-sampled initial section");
  const json& ex = cfg.experiment;
  if (!ex.contains("n_list") || !ex["n_list"].is_array())
    throw ConfigError("experiment.n_list: missing or not an array");
  if (!ex.contains("reference_n")) throw ConfigError("experiment.reference_n: missing");
  const std::vector<int> n_list = ex["n_list"].get<std::vector<int>>();
  const int reference_n = ex["reference_n"].get<int>();

  fs::create_directories(opts.out_dir);
  ManifestScope manifest("meanfield", cfg, opts.out_dir);

  SimConfig base = to_sim_config(cfg);
  base.threads = opts.threads;
  const auto rows = meanfield_experiment(base, n_list, reference_n);

  std::ostringstream csv;
  csv << "n,seed,w1_initial,w1_sup,ratio,r_bound\n";
  for (const auto& row : rows)
    csv << row.n << "," << row.seed << "," << fmt_double(row.w1_initial) << ","
        << fmt_double(row.w1_sup) << "," << fmt_double(row.ratio) << ","
        << fmt_double(row.r_bound) << "\n";
  const fs::path path = fs::path(opts.out_dir) / "meanfield.csv";
  write_file(path, csv.str());
  manifest.finish(kExitOk, {path.string()});
  return kExitOk;
}

int cmd_audit(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  const json& ex = cfg.experiment;
  const std::string which = ex.value("audit", "both");
  if (which != "center" && which != "obtuse_cone" && which != "both")
    throw ConfigError("experiment.audit: must be 'center', 'obtuse_cone' or 'both'");
  const auto kind = cfg.manifold.kind();
  if (kind != ManifoldKind::SphereHemisphere && kind != ManifoldKind::CircleArc)
    throw ConfigError("manifold: audits are defined on sphere factors");

  const int trials = ex.value("trials", 10000);
  const int measures = ex.value("measures", 100);
  const int atoms = ex.value("atoms", 10);
  const double support_radius = ex.value("support_radius", 0.6);
  const double lower_bound_C = ex.value("C", 1.0);
  if (trials < 1 || measures < 1 || atoms < 1)
    throw ConfigError("experiment: trials, measures and atoms must be >= 1");
  if (!(support_radius > 0.0 && support_radius < kPi / 2.0 - cfg.manifold.epsilon()))
    throw ConfigError("experiment.support_radius: must lie in (0, pi/2 - epsilon)");

  fs::create_directories(opts.out_dir);
  ManifestScope manifest("audit", cfg, opts.out_dir);

  json out;
  out["config_hash"] = git_blob_hash(cfg.raw_text);
  double worst = 0.0;
  const Point center = cfg.manifold.center();

  if (which == "center" || which == "both") {
    CenterAuditReport total;
    total.min_margin_norm = total.min_margin_cone = total.min_margin_exchange = 1e300;
    const int per = std::max(1, trials / measures);
    for (int b = 0; b < measures; ++b) {
      auto pts = cfg.manifold.sample_disk(center, support_radius, atoms,
                                          mix_seed(cfg.seed, 1000 + b));
      auto rho = EmpiricalMeasure::uniform(cfg.manifold, pts);
      const auto rep = audit_center_inequalities(cfg.potential, cfg.manifold, rho,
                                                 support_radius, lower_bound_C, per,
                                                 mix_seed(cfg.seed, 2000 + b));
      total.trials += rep.trials;
      total.min_margin_norm = std::min(total.min_margin_norm, rep.min_margin_norm);
      total.min_margin_cone = std::min(total.min_margin_cone, rep.min_margin_cone);
      total.min_margin_exchange = std::min(total.min_margin_exchange, rep.min_margin_exchange);
    }
    out["center"] = {{"trials", total.trials},
                     {"support_radius", support_radius},
                     {"C", lower_bound_C},
                     {"min_margin_norm", total.min_margin_norm},
                     {"min_margin_cone", total.min_margin_cone},
                     {"min_margin_exchange", total.min_margin_exchange}};
    worst = std::min({worst, total.min_margin_norm, total.min_margin_cone,
                      total.min_margin_exchange});
  }

  if (which == "obtuse_cone" || which == "both") {
    if (!(cfg.manifold.epsilon() < kPi / 4.0))
      throw ConfigError("manifold.epsilon: obtuse-cone audit needs the quarter disk, epsilon < pi/4");
    const int points = ex.value("points", 10);
    if (points < 2) throw ConfigError("experiment.points: must be >= 2");
    double min_ip = 1e300;
    const double radius = kPi / 4.0 - 1e-9;
    for (int t = 0; t < trials; ++t) {
      auto pts = cfg.manifold.sample_disk(center, radius, points, mix_seed(cfg.seed, 3000 + t));
      const auto rep = audit_obtuse_cone(cfg.manifold, pts);
      min_ip = std::min(min_ip, rep.min_inner_product);
    }
    out["obtuse_cone"] = {{"trials", trials}, {"points", points}, {"min_inner_product", min_ip}};
    worst = std::min(worst, min_ip);
  }

  const bool violated = worst < -1e-10;
  out["violated"] = violated;
  const fs::path path = fs::path(opts.out_dir) / "audit.json";
  write_file(path, out.dump(2) + "\n");
  const int code = violated ? kExitAuditViolation : kExitOk;
  manifest.finish(code, {path.string()});
  return code;
}

int cmd_constants(const ConstantsOpts& opts) {
  Potential pot = [&] {
    if (opts.profile == "half_quadratic") return Potential::half_quadratic();
    if (opts.profile == "lohe") return Potential::lohe();
    if (opts.profile == "power_law") return Potential::power_law(opts.q, opts.c);
    throw ConfigError("profile: unknown potential profile '" + opts.profile + "'");
  }();

  std::vector<double> times;
  std::stringstream ss(opts.r_times);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      times.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError("r-times: '" + tok + "' is not a number");
    }
  }
  if (times.empty()) times = {0.0};

  const auto rep = constants_report(pot, opts.epsilon, opts.grid, times);

  json out;
  out["potential"] = pot.name();
  out["epsilon"] = rep.epsilon;
  out["grid"] = rep.grid;
  out["C_f"] = rep.c_f;
  out["L_f"] = rep.l_f;
  out["C_g_prime"] = rep.c_g_prime;
  out["L_g_prime"] = rep.l_g_prime;
  out["velocity_bound"] = rep.velocity_bound;
  out["L"] = rep.lipschitz_L;
  out["Lip"] = rep.lipschitz_Lip;
  out["rate"] = rep.rate;
  out["r"] = json::array();
  for (const auto& [t, v] : rep.r_table) out["r"].push_back({{"t", t}, {"value", v}});

  const std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!opts.out_dir.empty()) {
    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "constants.json", text);
  }
  return kExitOk;
}

}  // namespace geoswarm::cli
