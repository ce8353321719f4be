#include "geoswarm/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace geoswarm {

namespace {
constexpr double kPi = std::numbers::pi;

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

Potential Potential::power_law(double q, double c) {
  if (!(q >= 1.0)) throw ConfigError("power_law exponent q must be >= 1");
  if (!(c > 0.0)) throw ConfigError("power_law scale c must be > 0");
  Potential p;
  p.name_ = "power_law(q=" + fmt_param(q) + ",c=" + fmt_param(c) + ")";
  p.g_ = [q, c](double s) { return c * std::pow(s, q); };
  p.gp_ = [q, c](double s) { return c * q * std::pow(s, q - 1.0); };
  // g'' = c q (q-1) s^{q-2} is continuous at 0 only for q = 1 or q >= 2
  p.c1_ = (q == 1.0) || (q >= 2.0);
  return p;
}

Potential Potential::half_quadratic() {
  Potential p;
  p.name_ = "half_quadratic";
  p.g_ = [](double s) { return 0.5 * s; };
  p.gp_ = [](double) { return 0.5; };
  p.c1_ = true;
  return p;
}

Potential Potential::lohe() {
  Potential p;
  p.name_ = "lohe";
  p.g_ = [](double s) {
    const double h = std::sqrt(s) / 2.0;
    const double sh = std::sin(h);
    return 2.0 * sh * sh;
  };
  p.gp_ = [](double s) { return detail::sinc(std::sqrt(s)) / 2.0; };
  p.c1_ = true;
  return p;
}

Potential Potential::custom(std::string name, std::function<double(double)> g,
                            std::function<double(double)> g_prime, bool c1) {
  if (!g || !g_prime) throw ConfigError("custom potential requires both g and g'");
  Potential p;
  p.name_ = std::move(name);
  p.g_ = std::move(g);
  p.gp_ = std::move(g_prime);
  p.c1_ = c1;
  return p;
}

double Potential::g(double s) const { return g_(s); }
double Potential::g_prime(double s) const { return gp_(s); }

bool Potential::attractive_on(double s_max, int samples) const {
  for (int i = 0; i < samples; ++i) {
    const double s = (i == samples - 1) ? s_max : s_max * i / (samples - 1);
    if (gp_(s) < 0.0) return false;
  }
  return true;
}

PotentialConstants compute_constants(const Potential& p, double epsilon, int grid) {
  if (grid < 1000) throw ConfigError("constants grid must have at least 1000 points");
  if (!(epsilon > 0.0 && epsilon < kPi / 2.0))
    throw ConfigError("constants epsilon must lie in (0, pi/2)");
  const double s_max = (kPi - 2.0 * epsilon) * (kPi - 2.0 * epsilon);
  const double step = s_max / (grid - 1);
  PotentialConstants out;
  out.epsilon = epsilon;
  out.grid = grid;
  double prev = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double s = (i == grid - 1) ? s_max : i * step;
    const double v = p.g_prime(s);
    if (!std::isfinite(v))
      throw NonFiniteValue("g' is not finite at s = " + std::to_string(s));
    out.c_g_prime = std::max(out.c_g_prime, std::abs(v));
    if (i > 0) out.l_g_prime = std::max(out.l_g_prime, std::abs(v - prev) / step);
    prev = v;
  }
  return out;
}

double k_eval(const Potential& p, const Manifold& m, const Point& x, const Point& y) {
  const double d = m.distance(x, y);
  return p.g(d * d);
}

Tangent grad_k(const Potential& p, const Manifold& m, const Point& x, const Point& y) {
  const double d = m.distance(x, y);
  const double w = -2.0 * p.g_prime(d * d);
  Tangent l = m.log(x, y);
  std::vector<double> v = l.vec();
  for (auto& c : v) c *= w;
  return Tangent(x, std::move(v));
}

double g_cap_eval(const Potential& p, const Manifold& m, const Point& x, const Point& y) {
  if (m.kind() != ManifoldKind::SphereHemisphere && m.kind() != ManifoldKind::CircleArc)
    throw ConfigError("g_cap_eval is defined on sphere factors only");
  const double d = m.distance(x, y);
  return 2.0 * p.g_prime(d * d) * detail::f_theta(d);
}

}  // namespace geoswarm
