#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geoswarm/analysis.hpp"
#include "geoswarm/rng.hpp"
#include "geoswarm/transport.hpp"

using namespace geoswarm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("discrete energy: single atom and two-atom substitution") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  auto hq = Potential::half_quadratic();
  auto single = EmpiricalMeasure::uniform(s2, {s2.center()});
  auto e1 = discrete_energy(hq, s2, single);
  CHECK(e1.full == doctest::Approx(0.5 * hq.g(0.0)));
  CHECK(e1.offdiag == 0.0);

  // two equal masses at distance pi/2: E_offdiag = (1/4) g(d^2) = pi^2/32
  auto a = s2.point({std::sin(kPi / 4), 0.0, std::cos(kPi / 4)});
  auto b = s2.point({-std::sin(kPi / 4), 0.0, std::cos(kPi / 4)});
  auto two = EmpiricalMeasure::uniform(s2, {a, b});
  auto e2 = discrete_energy(hq, s2, two);
  CHECK(e2.offdiag == doctest::Approx(kPi * kPi / 32.0).epsilon(1e-12));
  CHECK(e2.full == doctest::Approx(e2.offdiag + 0.5 * (0.25 + 0.25) * hq.g(0.0)));
}

TEST_CASE("dissipation: zero at consensus, quarter for the unit line pair") {
  auto line = Manifold::euclidean(1);
  auto hq = Potential::half_quadratic();
  auto consensus = EmpiricalMeasure::uniform(line, {line.point({0.2}), line.point({0.2})});
  CHECK(dissipation(line, hq, consensus) == 0.0);

  auto single = EmpiricalMeasure::uniform(line, {line.point({0.0})});
  CHECK(dissipation(line, hq, single) == 0.0);

  auto pair = EmpiricalMeasure::uniform(line, {line.point({0.0}), line.point({1.0})});
  CHECK(dissipation(line, hq, pair) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("diameter matches the all-pairs oracle and is shuffle-stable") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  auto pts = s2.sample_disk(s2.center(), 1.0, 20, 606);
  auto rho = EmpiricalMeasure::uniform(s2, pts);
  auto d = diameter(s2, rho);

  double oracle = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      oracle = std::max(oracle, detail::dist_span(s2.node(), pts[i].coords(), pts[j].coords()));
  CHECK(d.value == oracle);
  CHECK(d.i < d.j);

  std::vector<Point> shuffled(pts.rbegin(), pts.rend());
  auto d2 = diameter(s2, EmpiricalMeasure::uniform(s2, shuffled));
  CHECK(d2.value == oracle);

  auto single = EmpiricalMeasure::uniform(s2, {pts[0]});
  CHECK(diameter(s2, single).value == 0.0);

  auto a = s2.point({std::sin(0.35), 0.0, std::cos(0.35)});
  auto b = s2.point({-std::sin(0.35), 0.0, std::cos(0.35)});
  CHECK(diameter(s2, EmpiricalMeasure::uniform(s2, {a, b})).value ==
        doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("weighted center field: dirac case and velocity reconstruction") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  auto lohe = Potential::lohe();
  Rng rng(808);
  auto y = s2.sample_disk(s2.center(), 1.0, 1, 5)[0];
  auto dirac = EmpiricalMeasure::uniform(s2, {y});
  auto x = s2.sample_disk(s2.center(), 1.0, 1, 6)[0];
  auto c = weighted_center_field(lohe, s2, dirac, x);
  for (int k = 0; k < 3; ++k) CHECK(c[k] == doctest::Approx(y.coords()[k]).epsilon(1e-14));

  // v(x) = c(x) - (c(x).x) x for random states and potentials
  for (const auto& p : {Potential::lohe(), Potential::half_quadratic(),
                        Potential::power_law(2.0, 1.0)}) {
    auto pts = s2.sample_disk(s2.center(), 1.2, 15, rng.next_u64());
    auto rho = EmpiricalMeasure::uniform(s2, pts);
    for (int t = 0; t < 10; ++t) {
      auto xt = s2.sample_disk(s2.center(), 1.4, 1, rng.next_u64())[0];
      auto cv = weighted_center_field(p, s2, rho, xt);
      auto v = velocity(s2, p, rho, xt);
      double cx = 0.0;
      for (int k = 0; k < 3; ++k) cx += cv[k] * xt.coords()[k];
      for (int k = 0; k < 3; ++k)
        CHECK(std::abs(v.vec()[k] - (cv[k] - cx * xt.coords()[k])) < 1e-10);
    }
  }

  // half-quadratic: G = f(d), so c is the f-weighted mean of the atoms
  auto hq = Potential::half_quadratic();
  auto pts = s2.sample_disk(s2.center(), 1.0, 6, 17);
  auto rho = EmpiricalMeasure::uniform(s2, pts);
  auto cx = weighted_center_field(hq, s2, rho, x);
  std::vector<double> manual(3, 0.0);
  for (const auto& pj : pts) {
    const double f = detail::f_theta(s2.distance(x, pj));
    for (int k = 0; k < 3; ++k) manual[k] += f * pj.coords()[k] / 6.0;
  }
  for (int k = 0; k < 3; ++k) CHECK(cx[k] == doctest::Approx(manual[k]).epsilon(1e-12));
}

TEST_CASE("energy decreases and the dissipation identity is first order in h") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  SimConfig base{.manifold = s2,
                 .potential = Potential::lohe(),
                 .initial = DiskSpec{s2.center(), 0.6, 12},
                 .h = 1e-2,
                 .t_end = 2.0,
                 .scheme = Scheme::GeodesicEuler,
                 .record_every = 1,
                 .seed = 14142};
  std::vector<double> errs;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    SimConfig cfg = base;
    cfg.h = h;
    auto rec = simulate(cfg);
    REQUIRE_FALSE(rec.aborted());
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < rec.times.size(); ++k) {
      CHECK(rec.diagnostics[k + 1].energy_full <= rec.diagnostics[k].energy_full + 1e-9);
      const double de =
          (rec.diagnostics[k + 1].energy_full - rec.diagnostics[k].energy_full) / h;
      worst = std::max(worst, std::abs(de + rec.diagnostics[k].dissipation));
    }
    errs.push_back(worst);
  }
  CHECK(std::log2(errs[0] / errs[1]) > 0.9);
  CHECK(std::log2(errs[1] / errs[2]) > 0.9);
}

TEST_CASE("velocity is the scaled energy gradient for equal masses") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  auto quad = Potential::power_law(1.0, 1.0);
  const int n = 8;
  auto pts = s2.sample_disk(s2.center(), 0.8, n, 33);
  auto rho = EmpiricalMeasure::uniform(s2, pts);
  Rng rng(34);
  const double t = 1e-5;
  for (int i = 0; i < n; ++i) {
    std::vector<double> dir{rng.gaussian(), rng.gaussian(), rng.gaussian()};
    auto u = s2.project_tangent(pts[i], dir);
    std::vector<double> uv = u.vec();
    const double un = u.norm();
    for (auto& v : uv) v /= un;

    auto energy_at = [&](double s) {
      std::vector<double> w = uv;
      for (auto& c : w) c *= s;
      auto moved = s2.exp(pts[i], s2.tangent(pts[i], w));
      std::vector<Point> shifted = pts;
      shifted[i] = moved;
      // discrete energy with the 1/n^2 normalization of the equal-mass form
      double e = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          e += k_eval(quad, s2, shifted[a], shifted[b]) / (n * n);
      return e;
    };
    const double fd = (energy_at(t) - energy_at(-t)) / (2.0 * t);
    auto v = velocity(s2, quad, rho, pts[i]);
    double ip = 0.0;
    for (int k = 0; k < 3; ++k) ip += v.vec()[k] * uv[k];
    // x_i' = -n grad_i E_n
    CHECK(std::abs(ip + n * fd) <= std::max(1e-6 * std::abs(ip), 1e-8));
  }
}

TEST_CASE("velocity fields of nearby measures differ by at most Lip * W1") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.3);
  auto lohe = Potential::lohe();
  const auto rep = constants_report(lohe, 0.3, 10000);
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    auto pa = s2.sample_disk(s2.center(), 1.0, 6, rng.next_u64());
    auto pb = s2.sample_disk(s2.center(), 1.0, 6, rng.next_u64());
    auto mu = EmpiricalMeasure::uniform(s2, pa);
    auto nu = EmpiricalMeasure::uniform(s2, pb);
    const double w = w1(s2, mu, nu).distance;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      auto x = s2.sample_disk(s2.center(), 1.2, 1, rng.next_u64())[0];
      auto va = velocity(s2, lohe, mu, x);
      auto vb = velocity(s2, lohe, nu, x);
      double diff = 0.0;
      for (int c = 0; c < 3; ++c)
        diff += (va.vec()[c] - vb.vec()[c]) * (va.vec()[c] - vb.vec()[c]);
      worst = std::max(worst, std::sqrt(diff));
    }
    CHECK(worst <= rep.lipschitz_Lip * w + 1e-9);
  }
}

TEST_CASE("constants report values") {
  auto hq = Potential::half_quadratic();
  auto rep = constants_report(hq, kPi / 4.0, 100000, {0.0, 1.0});
  CHECK(rep.c_f == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(rep.c_g_prime == 0.5);
  CHECK(rep.l_g_prime == 0.0);
  CHECK(rep.lipschitz_L == doctest::Approx(2.0 * (rep.c_f + rep.l_f)).epsilon(1e-12));
  CHECK(rep.lipschitz_Lip == rep.lipschitz_L);
  CHECK(rep.r_table[0].second == 1.0);
  CHECK(rep.r(0.0) == 1.0);
  CHECK(rep.r_table[1].second == doctest::Approx(std::exp(rep.rate)).epsilon(1e-12));
  // analytic L_f agrees with the finite-difference cross-check
  CHECK(rep.l_f == doctest::Approx(rep.l_f_finite_diff).epsilon(1e-3));
  // f' is increasing, so the sup sits at the right endpoint
  CHECK(rep.l_f == doctest::Approx(detail::f_theta_prime(kPi / 2.0)).epsilon(1e-10));
}

TEST_CASE("consensus report") {
  auto line = Manifold::euclidean(1);
  auto hq = Potential::half_quadratic();

  SimConfig already{.manifold = line,
                    .potential = hq,
                    .initial = EmpiricalMeasure::uniform(
                        line, {line.point({0.1}), line.point({0.1})}),
                    .h = 0.01,
                    .t_end = 0.0,
                    .scheme = Scheme::GeodesicEuler,
                    .record_every = 1,
                    .seed = 0};
  auto rep0 = consensus_report(simulate(already), 1e-3);
  CHECK(rep0.reached);
  CHECK(rep0.time_to_tol == 0.0);

  SimConfig pair{.manifold = line,
                 .potential = hq,
                 .initial = EmpiricalMeasure::uniform(
                     line, {line.point({0.0}), line.point({1.0})}),
                 .h = 0.01,
                 .t_end = 10.0,
                 .scheme = Scheme::RK4Projected,
                 .record_every = 1,
                 .seed = 0};
  auto rep = consensus_report(simulate(pair), 1e-3);
  CHECK(rep.reached);
  REQUIRE(rep.time_to_tol.has_value());
  CHECK(*rep.time_to_tol == doctest::Approx(std::log(1.0 / 1e-3)).epsilon(0.01));
  CHECK(std::abs(rep.limit_point_estimate.coords()[0] - 0.5) < 1e-3);

  auto repulsive = Potential::custom("repulsive", [](double s) { return -s / 4.0; },
                                     [](double) { return -0.25; });
  SimConfig apart{.manifold = line,
                  .potential = repulsive,
                  .initial = EmpiricalMeasure::uniform(
                      line, {line.point({0.0}), line.point({0.5})}),
                  .h = 0.01,
                  .t_end = 2.0,
                  .scheme = Scheme::GeodesicEuler,
                  .record_every = 10,
                  .seed = 0};
  auto rep2 = consensus_report(simulate(apart), 1e-3);
  CHECK_FALSE(rep2.reached);
  CHECK_FALSE(rep2.time_to_tol.has_value());
}

TEST_CASE("center-inequality audit passes for lohe and half-quadratic") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  Rng rng(66);
  for (const auto& p : {Potential::lohe(), Potential::half_quadratic()}) {
    for (int rep = 0; rep < 5; ++rep) {
      auto pts = s2.sample_disk(s2.center(), 0.6, 10, rng.next_u64());
      auto rho = EmpiricalMeasure::uniform(s2, pts);
      auto report = audit_center_inequalities(p, s2, rho, 0.6, 1.0, 200, rng.next_u64());
      CHECK(report.violations(1e-10) == 0);
      CHECK(report.min_margin_norm >= -1e-10);
      CHECK(report.min_margin_cone >= -1e-10);
      CHECK(report.min_margin_exchange >= -1e-10);
    }
  }
}

TEST_CASE("center audit rejects an unattainable lower bound") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  auto pts = s2.sample_disk(s2.center(), 0.5, 5, 3);
  auto rho = EmpiricalMeasure::uniform(s2, pts);
  CHECK_THROWS_AS(audit_center_inequalities(Potential::lohe(), s2, rho, 0.5, 1.5, 10, 3),
                  HypothesisUnmet);
}

TEST_CASE("obtuse cone audit") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  Rng rng(77);

  // two points: the product is |log|^2 >= 0
  auto two = s2.sample_disk(s2.center(), 0.7, 2, 4);
  auto rep2 = audit_obtuse_cone(s2, two);
  CHECK(rep2.min_inner_product >= 0.0);

  // collinear points along one geodesic
  std::vector<Point> collinear;
  for (double t : {0.0, 0.2, 0.45, 0.7})
    collinear.push_back(
        s2.exp(s2.center(), s2.tangent(s2.center(), {t, 0.0, 0.0})));
  auto repc = audit_obtuse_cone(s2, collinear);
  CHECK(repc.min_inner_product >= -1e-12);

  // random configurations in the quarter disk: no violations
  for (int trial = 0; trial < 200; ++trial) {
    auto pts = s2.sample_disk(s2.center(), kPi / 4.0 - 1e-6, 10, rng.next_u64());
    auto rep = audit_obtuse_cone(s2, pts);
    CHECK(rep.min_inner_product >= -1e-10);
  }

  // points outside the quarter disk are rejected
  auto far = s2.sample_disk(s2.center(), 1.2, 3, 9);
  CHECK_THROWS_AS(audit_obtuse_cone(s2, far), DomainViolation);
}
