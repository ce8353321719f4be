#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geoswarm/manifold.hpp"
#include "geoswarm/rng.hpp"

using namespace geoswarm;

namespace {
constexpr double kPi = std::numbers::pi;

Point random_cap_point(const Manifold& m, const Point& center, double radius, Rng& rng) {
  return m.sample_disk(center, radius, 1, rng.next_u64())[0];
}

std::vector<Manifold> test_manifolds() {
  return {
      Manifold::sphere_hemisphere(2, 0.1),
      Manifold::circle_arc(0.2),
      Manifold::cylinder_band(0.3),
      Manifold::euclidean(2),
      Manifold::product(Manifold::circle_arc(0.3), Manifold::circle_arc(0.3)),
      Manifold::product(Manifold::circle_arc(0.3), Manifold::euclidean(1)),
  };
}

// interior radius leaving a margin to the domain boundary
double safe_radius(const Manifold& m) {
  switch (m.kind()) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc:
      return 0.9 * (kPi / 2.0 - m.epsilon());
    case ManifoldKind::CylinderBand:
      return 0.45 * (kPi - m.epsilon());
    case ManifoldKind::Euclidean:
      return 1.5;
    case ManifoldKind::Product:
      return std::min(safe_radius(m.left()), safe_radius(m.right()));
  }
  return 0.5;
}

}  // namespace

TEST_CASE("sphere distance matches arccos of the dot product") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto x = s2.point({1.0, 0.0, 0.0});
  auto y = s2.point({0.0, 1.0, 0.0});
  // both points sit on the equator, outside D_eps: use the raw span op
  CHECK(detail::dist_span(s2.node(), x.coords(), y.coords()) == doctest::Approx(kPi / 2).epsilon(1e-14));

  auto n = s2.point({0.0, 0.0, 1.0});
  CHECK(s2.distance(n, n) == 0.0);
}

TEST_CASE("distance rejects out-of-domain points") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto equator = s2.point({1.0, 0.0, 0.0});
  CHECK_THROWS_AS(s2.distance(equator, s2.center()), DomainViolation);
}

TEST_CASE("cylinder chart distance") {
  auto cyl = Manifold::cylinder_band(0.3);
  auto p = cyl.point({0.3, 0.0});
  auto q = cyl.point({0.7, 0.3});
  CHECK(cyl.distance(p, q) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("product distance combines components in quadrature") {
  auto torus = Manifold::product(Manifold::circle_arc(0.3), Manifold::circle_arc(0.3));
  auto c = torus.center();
  // components at distance 0.3 and 0.4 from the center along the circles
  auto l = Manifold::circle_arc(0.3);
  auto p1 = l.exp(l.center(), l.tangent(l.center(), {0.3, 0.0}));
  auto p2 = l.exp(l.center(), l.tangent(l.center(), {0.4, 0.0}));
  std::vector<double> coords = p1.coords();
  coords.insert(coords.end(), p2.coords().begin(), p2.coords().end());
  auto z = torus.point(coords);
  CHECK(torus.distance(c, z) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sphere log: great-circle case and log_x x = 0") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto n = s2.point({0.0, 0.0, 1.0});
  auto y = s2.point({std::sin(0.4), 0.0, std::cos(0.4)});
  auto l = s2.log(n, y);
  CHECK(l.vec()[0] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(std::abs(l.vec()[1]) < 1e-15);
  CHECK(std::abs(l.vec()[2]) < 1e-15);

  auto self = s2.log(y, y);
  for (double v : self.vec()) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("cylinder log is the chart difference") {
  auto cyl = Manifold::cylinder_band(0.3);
  auto x = cyl.point({0.2, 1.0});
  auto y = cyl.point({0.5, 3.0});
  auto l = cyl.log(x, y);
  CHECK(l.vec()[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(l.vec()[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("exp: identity at zero and quarter great circle") {
  auto s2 = Manifold::sphere_hemisphere(2, 1.0);  // wide margin not needed; exp checked raw
  auto x = s2.point({std::sin(0.3), 0.0, std::cos(0.3)});
  auto zero = s2.tangent(x, {0.0, 0.0, 0.0});
  auto back = s2.exp(x, zero);
  CHECK(back.coords() == x.coords());

  // quarter great circle, verified on the raw operation (endpoints are on the equator)
  std::vector<double> from{1.0, 0.0, 0.0}, v{0.0, kPi / 2.0, 0.0}, out(3);
  detail::exp_span(s2.node(), from, v, out);
  CHECK(out[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out[2] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("exp reports a domain violation when the step exits") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.4);
  auto n = s2.point({0.0, 0.0, 1.0});
  auto v = s2.tangent(n, {kPi / 2.0 - 0.2, 0.0, 0.0});  // overshoots pi/2 - 0.4
  CHECK_THROWS_AS(s2.exp(n, v), DomainViolation);
}

TEST_CASE("exp/log roundtrip on random admissible pairs") {
  Rng rng(2024);
  for (const auto& m : test_manifolds()) {
    const auto c = m.center();
    const double r = safe_radius(m);
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_cap_point(m, c, r, rng);
      auto y = random_cap_point(m, c, r, rng);
      const double d = m.distance(x, y);
      auto l = m.log(x, y);
      CHECK(std::abs(l.norm() - d) < 1e-10);
      auto back = m.exp(x, l);
      for (std::size_t k = 0; k < back.coords().size(); ++k)
        CHECK(std::abs(back.coords()[k] - y.coords()[k]) < 1e-10);
      // inverse direction: log after exp
      auto v = m.log(x, y);
      auto w = m.log(m.exp(x, v), y);
      CHECK(w.norm() < 1e-9);
    }
  }
}

TEST_CASE("metric axioms on random admissible triples") {
  Rng rng(7);
  for (const auto& m : test_manifolds()) {
    const auto c = m.center();
    const double r = safe_radius(m);
    for (int trial = 0; trial < 200; ++trial) {
      auto x = random_cap_point(m, c, r, rng);
      auto y = random_cap_point(m, c, r, rng);
      auto z = random_cap_point(m, c, r, rng);
      const double dxy = m.distance(x, y);
      const double dyx = m.distance(y, x);
      CHECK(dxy == dyx);  // symmetry is exact
      CHECK(dxy >= 0.0);
      CHECK(m.distance(x, x) == 0.0);
      CHECK(dxy <= m.distance(x, z) + m.distance(z, y) + 1e-12);
    }
  }
}

TEST_CASE("grad_dist_sq equals -2 log componentwise") {
  Rng rng(11);
  for (const auto& m : test_manifolds()) {
    const auto c = m.center();
    const double r = safe_radius(m);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_cap_point(m, c, r, rng);
      auto y = random_cap_point(m, c, r, rng);
      auto g = m.grad_dist_sq(x, y);
      auto l = m.log(x, y);
      for (std::size_t k = 0; k < g.vec().size(); ++k)
        CHECK(std::abs(g.vec()[k] + 2.0 * l.vec()[k]) < 1e-10);
    }
  }
  // x = y gives the zero vector
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto n = s2.center();
  auto zero = s2.grad_dist_sq(n, n);
  for (double v : zero.vec()) CHECK(v == 0.0);
}

TEST_CASE("sphere closed forms: grad d^2 = 2 f(theta)(cos(theta) x - y)") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  Rng rng(13);
  const auto c = s2.center();
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_cap_point(s2, c, 1.3, rng);
    auto y = random_cap_point(s2, c, 1.3, rng);
    const double theta = s2.distance(x, y);
    const double f = detail::f_theta(theta);
    auto g = s2.grad_dist_sq(x, y);
    for (int k = 0; k < 3; ++k) {
      const double closed = 2.0 * f * (std::cos(theta) * x.coords()[k] - y.coords()[k]);
      CHECK(std::abs(g.vec()[k] - closed) < 1e-10);
    }
  }

  auto n = s2.point({0.0, 0.0, 1.0});
  auto y = s2.point({std::sin(0.4), 0.0, std::cos(0.4)});
  auto g = s2.grad_dist_sq(n, y);
  CHECK(g.vec()[0] == doctest::Approx(-0.8).epsilon(1e-13));
}

TEST_CASE("cylinder grad_dist_sq in chart components") {
  auto cyl = Manifold::cylinder_band(0.3);
  auto x = cyl.point({0.3, 0.0});
  auto y = cyl.point({0.7, 0.3});
  auto g = cyl.grad_dist_sq(x, y);
  CHECK(g.vec()[0] == doctest::Approx(-0.8).epsilon(1e-14));
  CHECK(g.vec()[1] == doctest::Approx(-0.6).epsilon(1e-14));
}

TEST_CASE("project_tangent: idempotent, contractive, and exact on examples") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto n = s2.point({0.0, 0.0, 1.0});
  auto t = s2.project_tangent(n, std::vector<double>{1.0, 0.0, 5.0});
  CHECK(t.vec()[0] == doctest::Approx(1.0));
  CHECK(t.vec()[1] == doctest::Approx(0.0));
  CHECK(std::abs(t.vec()[2]) < 1e-15);

  Rng rng(17);
  for (const auto& m : test_manifolds()) {
    const auto c = m.center();
    auto x = random_cap_point(m, c, safe_radius(m), rng);
    std::vector<double> u(m.ambient_dim());
    for (auto& ui : u) ui = rng.gaussian();
    auto p1 = m.project_tangent(x, u);
    auto p2 = m.project_tangent(x, p1.ambient());
    double un = 0.0;
    for (double ui : u) un += ui * ui;
    CHECK(p1.norm() <= std::sqrt(un) + 1e-12);
    for (std::size_t k = 0; k < p1.vec().size(); ++k)
      CHECK(std::abs(p1.vec()[k] - p2.vec()[k]) < 1e-12);
  }
}

TEST_CASE("tangent layout invariants") {
  Rng rng(23);
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto x = random_cap_point(s2, s2.center(), 1.0, rng);
  std::vector<double> u{rng.gaussian(), rng.gaussian(), rng.gaussian()};
  auto t = s2.project_tangent(x, u);
  double along = 0.0;
  for (int k = 0; k < 3; ++k) along += t.vec()[k] * x.coords()[k];
  CHECK(std::abs(along) < 1e-10);

  // cylinder ambient tangents have no radial component
  auto cyl = Manifold::cylinder_band(0.3);
  auto p = cyl.point({0.8, -0.4});
  auto tc = cyl.project_tangent(p, std::vector<double>{0.3, -1.2, 0.7});
  auto amb = tc.ambient();
  const double radial = amb[0] * std::cos(0.8) + amb[1] * std::sin(0.8);
  CHECK(std::abs(radial) < 1e-10);
  CHECK(amb[2] == doctest::Approx(0.7));
}

TEST_CASE("contains: domain and disk membership") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  auto n = s2.point({0.0, 0.0, 1.0});
  CHECK(s2.contains(n));
  auto equator = s2.point({1.0, 0.0, 0.0});  // d(x, N) = pi/2: excluded
  CHECK_FALSE(s2.contains(equator));

  auto near = s2.point({std::sin(0.59), 0.0, std::cos(0.59)});
  CHECK(s2.contains(near, n, 0.6));
  auto far = s2.point({std::sin(0.7), 0.0, std::cos(0.7)});
  CHECK_FALSE(s2.contains(far, n, 0.6));
}

TEST_CASE("sample_disk: support, determinism, degenerate radius") {
  Rng rng(31);
  for (const auto& m : test_manifolds()) {
    const auto c = m.center();
    const double r = safe_radius(m);
    auto pts = m.sample_disk(c, r, 64, 99);
    REQUIRE(pts.size() == 64);
    for (const auto& p : pts) CHECK(m.contains(p, c, r));

    auto again = m.sample_disk(c, r, 64, 99);
    for (int i = 0; i < 64; ++i) CHECK(pts[i].coords() == again[i].coords());

    auto degenerate = m.sample_disk(c, 0.0, 5, 1);
    for (const auto& p : degenerate) CHECK(p.coords() == c.coords());
  }
}

TEST_CASE("sample_disk rejects disks that exit the domain") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.4);
  CHECK_THROWS_AS(s2.sample_disk(s2.center(), kPi / 2.0 - 0.4, 4, 0), DomainViolation);
  auto cyl = Manifold::cylinder_band(0.3);
  CHECK_THROWS_AS(cyl.sample_disk(cyl.center(), kPi, 4, 0), DomainViolation);
}

TEST_CASE("sphere cap sampling is uniform in the polar CDF") {
  // with r = pi/2 the cap CDF in theta is (1 - cos theta) / (1 - cos r);
  // check the empirical quartiles of d(p, center)
  auto s2 = Manifold::sphere_hemisphere(2, 0.05);
  const auto c = s2.center();
  const double r = 1.2;
  auto pts = s2.sample_disk(c, r, 20000, 4242);
  int below_median = 0;
  const double median_theta = std::acos(1.0 - 0.5 * (1.0 - std::cos(r)));
  for (const auto& p : pts)
    if (s2.distance(p, c) < median_theta) ++below_median;
  CHECK(std::abs(below_median / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("product operations are bitwise componentwise") {
  auto circle = Manifold::circle_arc(0.3);
  auto line = Manifold::euclidean(1);
  auto prod = Manifold::product(circle, line);
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    auto a1 = random_cap_point(circle, circle.center(), 1.0, rng);
    auto a2 = random_cap_point(circle, circle.center(), 1.0, rng);
    auto b1 = random_cap_point(line, line.center(), 2.0, rng);
    auto b2 = random_cap_point(line, line.center(), 2.0, rng);

    std::vector<double> c1 = a1.coords(), c2 = a2.coords();
    c1.insert(c1.end(), b1.coords().begin(), b1.coords().end());
    c2.insert(c2.end(), b2.coords().begin(), b2.coords().end());
    auto p1 = prod.point(c1), p2 = prod.point(c2);

    const double dl = circle.distance(a1, a2);
    const double dr = line.distance(b1, b2);
    CHECK(prod.distance(p1, p2) == std::sqrt(dl * dl + dr * dr));

    auto lp = prod.log(p1, p2);
    auto ll = circle.log(a1, a2);
    auto lr = line.log(b1, b2);
    CHECK(lp.vec()[0] == ll.vec()[0]);
    CHECK(lp.vec()[1] == ll.vec()[1]);
    CHECK(lp.vec()[2] == lr.vec()[0]);

    auto ep = prod.exp(p1, lp);
    auto el = circle.exp(a1, ll);
    auto er = line.exp(b1, lr);
    CHECK(ep.coords()[0] == el.coords()[0]);
    CHECK(ep.coords()[1] == el.coords()[1]);
    CHECK(ep.coords()[2] == er.coords()[0]);
  }
}

TEST_CASE("near-antipodal log is refused") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  std::vector<double> x{0.0, 0.0, 1.0};
  std::vector<double> y{std::sin(kPi - 1e-8), 0.0, std::cos(kPi - 1e-8)};
  std::vector<double> out(3);
  CHECK_THROWS_AS(detail::log_span(s2.node(), x, y, out), NearAntipodal);
}

TEST_CASE("point validation") {
  auto s2 = Manifold::sphere_hemisphere(2, 0.1);
  CHECK_THROWS_AS(s2.point({1.0, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(s2.point({1.0, 0.0}), ConfigError);
}
