#include "geoswarm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geoswarm/rng.hpp"

namespace geoswarm {

namespace {
constexpr double kPi = std::numbers::pi;

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_vec(const std::vector<double>& a) { return std::sqrt(dot_vec(a, a)); }
}  // namespace

EnergyPair discrete_energy(const Potential& p, const Manifold& m, const EmpiricalMeasure& rho) {
  const int n = rho.size();
  const auto& pts = rho.points();
  const auto& ms = rho.masses();
  EnergyPair e;
  double self = 0.0;
  const double g0 = p.g(0.0);
  for (int i = 0; i < n; ++i) {
    self += ms[i] * ms[i] * g0;
    for (int j = i + 1; j < n; ++j) {
      const double d = detail::dist_span(m.node(), pts[i].coords(), pts[j].coords());
      e.offdiag += ms[i] * ms[j] * p.g(d * d);
    }
  }
  e.full = e.offdiag + 0.5 * self;
  return e;
}

double dissipation(const Manifold& m, const Potential& p, const EmpiricalMeasure& rho) {
  double s = 0.0;
  for (int i = 0; i < rho.size(); ++i) {
    const Tangent v = velocity(m, p, rho, rho.points()[i]);
    s += rho.masses()[i] * dot_vec(v.vec(), v.vec());
  }
  return s;
}

DiameterResult diameter(const Manifold& m, const EmpiricalMeasure& rho) {
  const int n = rho.size();
  const auto& pts = rho.points();
  DiameterResult best{0.0, 0, 0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = detail::dist_span(m.node(), pts[i].coords(), pts[j].coords());
      if (d > best.value) best = {d, i, j};
    }
  return best;
}

std::vector<double> weighted_center_field(const Potential& p, const Manifold& m,
                                          const EmpiricalMeasure& rho, const Point& x) {
  if (m.kind() != ManifoldKind::SphereHemisphere && m.kind() != ManifoldKind::CircleArc)
    throw ConfigError("weighted_center_field is defined on sphere factors only");
  std::vector<double> c(m.ambient_dim(), 0.0);
  for (int j = 0; j < rho.size(); ++j) {
    const double gj = g_cap_eval(p, m, x, rho.points()[j]);
    const auto& yj = rho.points()[j].coords();
    const double mj = rho.masses()[j];
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += mj * gj * yj[k];
  }
  return c;
}

CenterAuditReport audit_center_inequalities(const Potential& p, const Manifold& m,
                                            const EmpiricalMeasure& rho, double support_radius,
                                            double lower_bound_C, int trials,
                                            std::uint64_t seed) {
  if (m.kind() != ManifoldKind::SphereHemisphere && m.kind() != ManifoldKind::CircleArc)
    throw ConfigError("audit_center_inequalities is defined on sphere factors only");
  const double eps = m.epsilon();
  // the assumed lower bound G >= C must hold across the whole domain
  {
    const int grid = 10000;
    const double d_max = kPi - 2.0 * eps;
    for (int i = 0; i < grid; ++i) {
      const double d = (i == grid - 1) ? d_max : d_max * i / (grid - 1);
      const double G = 2.0 * p.g_prime(d * d) * detail::f_theta(d);
      if (G < lower_bound_C - 1e-12)
        throw HypothesisUnmet("G(d) = " + std::to_string(G) + " < C = " +
                              std::to_string(lower_bound_C) + " at d = " + std::to_string(d));
    }
  }
  const Point north = m.center();
  for (const auto& atom : rho.points())
    if (!m.contains(atom, north, support_radius))
      throw DomainViolation("audit: measure support exceeds the stated disk radius");

  const double r = support_radius;
  const double cos_r = std::cos(r);
  const double cos_2r = std::cos(2.0 * r);
  const double trial_radius = kPi / 2.0 - eps - 1e-9;

  CenterAuditReport rep;
  rep.trials = trials;
  rep.min_margin_norm = std::numeric_limits<double>::infinity();
  rep.min_margin_cone = std::numeric_limits<double>::infinity();
  rep.min_margin_exchange = std::numeric_limits<double>::infinity();

  const auto xs = m.sample_disk(north, trial_radius, 2 * trials, mix_seed(seed, 1));
  const auto zs = m.sample_disk(north, r, trials, mix_seed(seed, 2));

  for (int t = 0; t < trials; ++t) {
    const Point& x1 = xs[2 * t];
    const Point& x2 = xs[2 * t + 1];
    const Point& z = zs[t];
    const auto c1 = weighted_center_field(p, m, rho, x1);
    const auto c2 = weighted_center_field(p, m, rho, x2);
    const double n1 = norm_vec(c1);
    rep.min_margin_norm = std::min(rep.min_margin_norm, n1 - lower_bound_C * cos_r);
    rep.min_margin_cone =
        std::min(rep.min_margin_cone, dot_vec(c1, z.coords()) - n1 * cos_2r);
    const double lhs = dot_vec(c1, x1.coords()) + dot_vec(c2, x2.coords());
    const double rhs = dot_vec(c1, x2.coords()) + dot_vec(c2, x1.coords());
    rep.min_margin_exchange = std::min(rep.min_margin_exchange, rhs - lhs);
  }
  return rep;
}

ObtuseConeReport audit_obtuse_cone(const Manifold& m, const std::vector<Point>& points) {
  if (m.kind() != ManifoldKind::SphereHemisphere && m.kind() != ManifoldKind::CircleArc)
    throw ConfigError("audit_obtuse_cone is defined on sphere factors only");
  const Point north = m.center();
  for (const auto& pt : points)
    if (!(detail::dist_span(m.node(), pt.coords(), north.coords()) < kPi / 4.0))
      throw DomainViolation("audit_obtuse_cone: point outside the quarter disk");
  const auto rho = EmpiricalMeasure::uniform(m, points);
  const auto diam = diameter(m, rho);
  ObtuseConeReport rep;
  rep.pair_i = diam.i;
  rep.pair_j = diam.j;
  rep.min_inner_product = std::numeric_limits<double>::infinity();
  const Point& x1 = points[diam.i];
  const Point& x2 = points[diam.j];
  const Tangent base_log = m.log(x1, x2);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (static_cast<int>(j) == diam.i) continue;
    const Tangent lj = m.log(x1, points[j]);
    rep.min_inner_product = std::min(rep.min_inner_product, dot(base_log, lj));
  }
  return rep;
}

double ConstantsReport::r(double t) const { return std::exp(rate * t); }

ConstantsReport constants_report(const Potential& p, double epsilon, int grid,
                                 const std::vector<double>& r_times) {
  if (!(epsilon > 0.0 && epsilon < kPi / 2.0))
    throw ConfigError("constants epsilon must lie in (0, pi/2)");
  if (grid < 1000) throw ConfigError("constants grid must have at least 1000 points");

  ConstantsReport rep;
  rep.epsilon = epsilon;
  rep.grid = grid;

  const double theta_max = kPi - 2.0 * epsilon;
  const double step = theta_max / (grid - 1);
  double prev_f = 1.0;
  for (int i = 0; i < grid; ++i) {
    const double th = (i == grid - 1) ? theta_max : i * step;
    const double f = detail::f_theta(th);
    rep.c_f = std::max(rep.c_f, f);
    rep.l_f = std::max(rep.l_f, detail::f_theta_prime(th));
    if (i > 0) rep.l_f_finite_diff = std::max(rep.l_f_finite_diff, (f - prev_f) / step);
    prev_f = f;
  }

  const auto pc = compute_constants(p, epsilon, grid);
  rep.c_g_prime = pc.c_g_prime;
  rep.l_g_prime = pc.l_g_prime;

  rep.velocity_bound = 2.0 * kPi * rep.c_g_prime;
  rep.lipschitz_L = 4.0 * kPi * kPi * rep.l_g_prime +
                    4.0 * rep.c_g_prime * (rep.c_f + rep.l_f);
  rep.lipschitz_Lip = 4.0 * kPi * kPi * rep.l_g_prime +
                      4.0 * rep.c_g_prime * (rep.l_f + rep.c_f);
  rep.rate = rep.lipschitz_Lip + rep.lipschitz_L + 4.0 * kPi * rep.c_g_prime;
  for (double t : r_times) rep.r_table.emplace_back(t, rep.r(t));
  return rep;
}

ConsensusReport consensus_report(const TrajectoryRecord& traj, double tol) {
  if (!(tol > 0.0)) throw ConfigError("consensus tolerance must be positive");
  if (traj.states.empty()) throw ConfigError("consensus_report: empty trajectory");

  std::optional<double> first_time;
  for (std::size_t k = 0; k < traj.diagnostics.size(); ++k) {
    if (traj.diagnostics[k].diameter <= tol) {
      first_time = traj.times[k];
      break;
    }
  }

  const EmpiricalMeasure& last = traj.final_state();
  const Manifold& m = last.manifold();

  // intrinsic mean by log/exp fixed-point iteration, seeded at the heaviest atom
  int seed_idx = 0;
  for (int i = 1; i < last.size(); ++i)
    if (last.masses()[i] > last.masses()[seed_idx]) seed_idx = i;
  Point mean = last.points()[seed_idx];
  const int w = m.coord_dim();
  for (int sweep = 0; sweep < 10; ++sweep) {
    std::vector<double> pull(w, 0.0), lg(w);
    for (int i = 0; i < last.size(); ++i) {
      detail::log_span(m.node(), mean.coords(), last.points()[i].coords(), lg);
      for (int c = 0; c < w; ++c) pull[c] += last.masses()[i] * lg[c];
    }
    mean = m.exp(mean, Tangent(mean, std::move(pull)));
  }

  ConsensusReport rep{.reached = false,
                      .time_to_tol = first_time,
                      .final_diameter = traj.diagnostics.back().diameter,
                      .limit_point_estimate = mean};
  rep.reached = rep.final_diameter <= tol;
  return rep;
}

}  // namespace geoswarm
