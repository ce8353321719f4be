#include "geoswarm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geoswarm/analysis.hpp"
#include "geoswarm/parallel.hpp"

namespace geoswarm {

namespace {

using Node = Manifold::Node;

std::span<const double> row(const std::vector<double>& xs, int w, int i) {
  return {xs.data() + static_cast<std::size_t>(i) * w, static_cast<std::size_t>(w)};
}

std::span<double> row(std::vector<double>& xs, int w, int i) {
  return {xs.data() + static_cast<std::size_t>(i) * w, static_cast<std::size_t>(w)};
}

// Atom-order invariant velocity of particle i. Addends are collected per
// component and summed in sorted order, so the reduction does not depend on
// how the atoms are indexed.
void velocity_of(const Node& nd, const Potential& p, const std::vector<double>& xs,
                 const std::vector<double>& masses, int i, std::span<double> out,
                 std::vector<double>& addends, std::vector<double>& lg) {
  const int n = static_cast<int>(masses.size());
  const int w = nd.width;
  addends.resize(static_cast<std::size_t>(n) * w);
  lg.resize(w);
  const auto xi = row(xs, w, i);
  for (int j = 0; j < n; ++j) {
    const auto xj = row(xs, w, j);
    const double d = detail::dist_span(nd, xi, xj);
    detail::log_span(nd, xi, xj, lg);
    const double wj = 2.0 * masses[j] * p.g_prime(d * d);
    for (int c = 0; c < w; ++c) addends[static_cast<std::size_t>(c) * n + j] = wj * lg[c];
  }
  for (int c = 0; c < w; ++c) {
    auto* lo = addends.data() + static_cast<std::size_t>(c) * n;
    std::sort(lo, lo + n);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += lo[j];
    out[c] = s;
  }
}

void all_velocities(const Node& nd, const Potential& p, const std::vector<double>& xs,
                    const std::vector<double>& masses, int threads, std::vector<double>& vs) {
  const int n = static_cast<int>(masses.size());
  const int w = nd.width;
  vs.resize(static_cast<std::size_t>(n) * w);
  parallel_for(n, threads, [&](int i) {
    thread_local std::vector<double> addends, lg;
    velocity_of(nd, p, xs, masses, i, row(vs, w, i), addends, lg);
  });
}

struct StepFailure {
  int particle = -1;
  std::string message;
};

// synchronous geodesic Euler: x_i <- exp_{x_i}(h v_i), v from the pre-step state
std::optional<StepFailure> euler_step(const Node& nd, const Potential& p,
                                      const std::vector<double>& masses, double h, int threads,
                                      std::vector<double>& xs, std::vector<double>& scratch) {
  const int n = static_cast<int>(masses.size());
  const int w = nd.width;
  std::vector<double> vs;
  all_velocities(nd, p, xs, masses, threads, vs);
  scratch.resize(xs.size());
  for (int i = 0; i < n; ++i) {
    auto vi = row(vs, w, i);
    for (auto& v : vi) v *= h;
    detail::exp_span(nd, row(xs, w, i), vi, row(scratch, w, i));
    if (!detail::contains_span(nd, row(scratch, w, i)))
      return StepFailure{i, "particle " + std::to_string(i) + " left the admissible domain"};
  }
  xs.swap(scratch);
  return std::nullopt;
}

// classical RK4 in ambient coordinates; stage slopes are tangent by
// construction and stage points / the result are retracted to the manifold
std::optional<StepFailure> rk4_step(const Node& nd, const Potential& p,
                                    const std::vector<double>& masses, double h, int threads,
                                    std::vector<double>& xs) {
  const int n = static_cast<int>(masses.size());
  const int w = nd.width;
  const int a = nd.ambient;
  const std::size_t na = static_cast<std::size_t>(n) * a;

  std::vector<double> y0(na), stage_x(xs.size()), vs, k(na), acc(na), amb(na);

  for (int i = 0; i < n; ++i)
    detail::ambient_span(nd, row(xs, w, i), row(y0, a, i));

  auto eval_slopes = [&](const std::vector<double>& state_x, std::vector<double>& ka) {
    all_velocities(nd, p, state_x, masses, threads, vs);
    for (int i = 0; i < n; ++i)
      detail::tangent_ambient_span(nd, row(state_x, w, i), row(vs, w, i), row(ka, a, i));
  };

  // k1
  eval_slopes(xs, k);
  for (std::size_t q = 0; q < na; ++q) acc[q] = k[q];
  // k2
  for (std::size_t q = 0; q < na; ++q) amb[q] = y0[q] + 0.5 * h * k[q];
  for (int i = 0; i < n; ++i) detail::retract_span(nd, row(amb, a, i), row(stage_x, w, i));
  eval_slopes(stage_x, k);
  for (std::size_t q = 0; q < na; ++q) acc[q] += 2.0 * k[q];
  // k3
  for (std::size_t q = 0; q < na; ++q) amb[q] = y0[q] + 0.5 * h * k[q];
  for (int i = 0; i < n; ++i) detail::retract_span(nd, row(amb, a, i), row(stage_x, w, i));
  eval_slopes(stage_x, k);
  for (std::size_t q = 0; q < na; ++q) acc[q] += 2.0 * k[q];
  // k4
  for (std::size_t q = 0; q < na; ++q) amb[q] = y0[q] + h * k[q];
  for (int i = 0; i < n; ++i) detail::retract_span(nd, row(amb, a, i), row(stage_x, w, i));
  eval_slopes(stage_x, k);
  for (std::size_t q = 0; q < na; ++q) acc[q] += k[q];

  for (std::size_t q = 0; q < na; ++q) amb[q] = y0[q] + h / 6.0 * acc[q];
  for (int i = 0; i < n; ++i) {
    detail::retract_span(nd, row(amb, a, i), row(stage_x, w, i));
    if (!detail::contains_span(nd, row(stage_x, w, i)))
      return StepFailure{i, "particle " + std::to_string(i) + " left the admissible domain"};
  }
  xs.swap(stage_x);
  return std::nullopt;
}

void collect_cylinder_z(const Node& nd, int base,
                        std::vector<int>& z_offsets) {
  switch (nd.kind) {
    case ManifoldKind::CylinderBand:
      z_offsets.push_back(base + 1);
      return;
    case ManifoldKind::Product:
      collect_cylinder_z(*nd.left, base, z_offsets);
      collect_cylinder_z(*nd.right, base + nd.left->width, z_offsets);
      return;
    default:
      return;
  }
}

EmpiricalMeasure to_measure(const Manifold& m, const std::vector<double>& xs,
                            const std::vector<double>& masses) {
  const int n = static_cast<int>(masses.size());
  const int w = m.coord_dim();
  std::vector<Point> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    auto r = row(xs, w, i);
    pts.push_back(m.point(std::vector<double>(r.begin(), r.end())));
  }
  return EmpiricalMeasure::weighted(m, std::move(pts), masses);
}

EmpiricalMeasure resolve_initial(const SimConfig& cfg) {
  if (std::holds_alternative<EmpiricalMeasure>(cfg.initial))
    return std::get<EmpiricalMeasure>(cfg.initial);
  const auto& spec = std::get<DiskSpec>(cfg.initial);
  auto pts = cfg.manifold.sample_disk(spec.center, spec.radius, spec.n, cfg.seed);
  return EmpiricalMeasure::uniform(cfg.manifold, std::move(pts));
}

StepDiagnostics diagnose(const Manifold& m, const Potential& p, const EmpiricalMeasure& rho,
                         double t, const Point& ref, const std::vector<int>& z_offsets) {
  StepDiagnostics d;
  d.t = t;
  const auto e = discrete_energy(p, m, rho);
  d.energy_full = e.full;
  d.energy_offdiag = e.offdiag;
  d.dissipation = dissipation(m, p, rho);
  d.diameter = diameter(m, rho).value;
  double dmax = 0.0;
  for (const auto& pt : rho.points())
    dmax = std::max(dmax, detail::dist_span(m.node(), pt.coords(), ref.coords()));
  d.disk_radius_max = dmax;
  double zext = 0.0;
  for (int off : z_offsets)
    for (const auto& pt : rho.points())
      zext = std::max(zext, std::abs(pt.coords()[off] - ref.coords()[off]));
  d.z_extent = zext;
  return d;
}

}  // namespace

Tangent velocity(const Manifold& m, const Potential& p, const EmpiricalMeasure& rho,
                 const Point& x) {
  if (!m.contains(x)) throw DomainViolation("velocity: evaluation point outside the domain");
  const int n = rho.size();
  const int w = m.coord_dim();
  std::vector<double> xs(static_cast<std::size_t>(n + 1) * w);
  for (int j = 0; j < n; ++j) {
    const auto& c = rho.points()[j].coords();
    std::copy(c.begin(), c.end(), xs.begin() + static_cast<std::size_t>(j) * w);
  }
  // evaluation point appended with zero mass so the addend multiset matches
  // the per-particle computation inside step()
  std::copy(x.coords().begin(), x.coords().end(), xs.begin() + static_cast<std::size_t>(n) * w);
  std::vector<double> masses = rho.masses();
  masses.push_back(0.0);
  std::vector<double> out(w), addends, lg;
  velocity_of(m.node(), p, xs, masses, n, out, addends, lg);
  return Tangent(x, std::move(out));
}

EmpiricalMeasure step(const Manifold& m, const Potential& p, const EmpiricalMeasure& state,
                      double h, Scheme scheme) {
  if (!(h > 0.0)) throw ConfigError("step size h must be positive");
  const int n = state.size();
  const int w = m.coord_dim();
  std::vector<double> xs(static_cast<std::size_t>(n) * w);
  for (int i = 0; i < n; ++i) {
    const auto& c = state.points()[i].coords();
    std::copy(c.begin(), c.end(), xs.begin() + static_cast<std::size_t>(i) * w);
  }
  std::vector<double> scratch;
  std::optional<StepFailure> fail;
  if (scheme == Scheme::GeodesicEuler)
    fail = euler_step(m.node(), p, state.masses(), h, 1, xs, scratch);
  else
    fail = rk4_step(m.node(), p, state.masses(), h, 1, xs);
  if (fail)
    throw DomainViolation("step: " + fail->message);
  return to_measure(m, xs, state.masses());
}

TrajectoryRecord simulate(const SimConfig& cfg) {
  if (!(cfg.h > 0.0)) throw ConfigError("integrator.h must be positive");
  if (!(cfg.t_end >= 0.0)) throw ConfigError("integrator.t_end must be nonnegative");
  if (cfg.record_every < 1) throw ConfigError("integrator.record_every must be >= 1");

  const Manifold& m = cfg.manifold;
  const EmpiricalMeasure init = resolve_initial(cfg);
  const Point ref = std::holds_alternative<DiskSpec>(cfg.initial)
                        ? std::get<DiskSpec>(cfg.initial).center
                        : m.center();

  std::vector<int> z_offsets;
  collect_cylinder_z(m.node(), 0, z_offsets);

  TrajectoryRecord rec{.times = {},
                       .states = {},
                       .diagnostics = {},
                       .reference_center = ref,
                       .abort = std::nullopt};

  const long nsteps = std::llround(cfg.t_end / cfg.h);
  const int n = init.size();
  const int w = m.coord_dim();

  std::vector<double> xs(static_cast<std::size_t>(n) * w);
  for (int i = 0; i < n; ++i) {
    const auto& c = init.points()[i].coords();
    std::copy(c.begin(), c.end(), xs.begin() + static_cast<std::size_t>(i) * w);
  }
  const std::vector<double>& masses = init.masses();

  auto record = [&](long k) {
    EmpiricalMeasure state = to_measure(m, xs, masses);
    rec.times.push_back(k * cfg.h);
    rec.diagnostics.push_back(
        diagnose(m, cfg.potential, state, k * cfg.h, ref, z_offsets));
    rec.states.push_back(std::move(state));
  };

  record(0);
  std::vector<double> scratch;
  for (long k = 0; k < nsteps; ++k) {
    std::optional<StepFailure> fail;
    try {
      if (cfg.scheme == Scheme::GeodesicEuler)
        fail = euler_step(m.node(), cfg.potential, masses, cfg.h, cfg.threads, xs, scratch);
      else
        fail = rk4_step(m.node(), cfg.potential, masses, cfg.h, cfg.threads, xs);
    } catch (const NearAntipodal& e) {
      fail = StepFailure{-1, e.what()};
    }
    if (!fail && cfg.z_limit) {
      for (int i = 0; i < n && !fail; ++i)
        for (int off : z_offsets)
          if (std::abs(xs[static_cast<std::size_t>(i) * w + off] - ref.coords()[off]) >
              *cfg.z_limit)
            fail = StepFailure{i, "particle " + std::to_string(i) + " exceeded the z drift limit"};
    }
    if (fail) {
      rec.abort = AbortInfo{k, fail->particle, fail->message};
      return rec;
    }
    const long kk = k + 1;
    if (kk % cfg.record_every == 0 || kk == nsteps) record(kk);
  }
  return rec;
}

ProductDecoupledResult simulate_product_decoupled(const SimConfig& cfg) {
  if (cfg.manifold.kind() != ManifoldKind::Product)
    throw ConfigError("simulate_product_decoupled requires a product manifold");
  if (cfg.potential.name() != "half_quadratic")
    throw ConfigError("simulate_product_decoupled requires the half_quadratic potential");

  const Manifold ml = cfg.manifold.left();
  const Manifold mr = cfg.manifold.right();
  const int wl = ml.coord_dim();

  const EmpiricalMeasure init = resolve_initial(cfg);
  std::vector<Point> lp, rp;
  for (const auto& pt : init.points()) {
    const auto& c = pt.coords();
    lp.push_back(ml.point(std::vector<double>(c.begin(), c.begin() + wl)));
    rp.push_back(mr.point(std::vector<double>(c.begin() + wl, c.end())));
  }

  SimConfig prod_cfg = cfg;
  prod_cfg.initial = init;

  SimConfig left_cfg = cfg;
  left_cfg.manifold = ml;
  left_cfg.initial = EmpiricalMeasure::weighted(ml, std::move(lp), init.masses());

  SimConfig right_cfg = cfg;
  right_cfg.manifold = mr;
  right_cfg.initial = EmpiricalMeasure::weighted(mr, std::move(rp), init.masses());

  return ProductDecoupledResult{.product = simulate(prod_cfg),
                                .left = simulate(left_cfg),
                                .right = simulate(right_cfg)};
}

}  // namespace geoswarm
