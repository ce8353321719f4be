#pragma once

#include <functional>
#include <string>

#include "geoswarm/manifold.hpp"

namespace geoswarm {

// Interaction profile g identifying the potential K(x, y) = g(d(x, y)^2).
// g must be differentiable with locally Lipschitz g'. Immutable.
class Potential {
 public:
  // g(s) = c * s^q, q >= 1, c > 0. q = 1, c = 1 is the quadratic potential K = d^2.
  static Potential power_law(double q, double c);
  // g(s) = s / 2, so K = d^2 / 2 and grad K_y(x) = -log_x y
  static Potential half_quadratic();
  // g(s) = 2 sin^2(sqrt(s) / 2); on the sphere K = 1 - x.y (Lohe coupling)
  static Potential lohe();
  // caller supplies g and g' (no automatic differentiation); c1 flags whether
  // g' is continuously differentiable, a hypothesis some consensus results need
  static Potential custom(std::string name, std::function<double(double)> g,
                          std::function<double(double)> g_prime, bool c1 = false);

  double g(double s) const;
  double g_prime(double s) const;
  const std::string& name() const { return name_; }
  bool c1() const { return c1_; }

  // g' >= 0 sampled on [0, s_max]
  bool attractive_on(double s_max, int samples = 1000) const;

 private:
  Potential() = default;
  std::string name_;
  std::function<double(double)> g_, gp_;
  bool c1_ = false;
};

// |g'| sup and Lipschitz constant of g' on [0, (pi - 2 eps)^2], by uniform
// grid sampling (grid points inclusive of both endpoints).
struct PotentialConstants {
  double epsilon = 0.0;
  double c_g_prime = 0.0;
  double l_g_prime = 0.0;
  int grid = 0;
};

PotentialConstants compute_constants(const Potential& p, double epsilon, int grid = 100000);

// K(x, y) = g(d(x, y)^2)
double k_eval(const Potential& p, const Manifold& m, const Point& x, const Point& y);

// grad K_y(x) = -2 g'(d(x, y)^2) log_x y, a tangent at x
Tangent grad_k(const Potential& p, const Manifold& m, const Point& x, const Point& y);

// G(x, y) = 2 g'(d^2) d / sin(d) on sphere factors, with G(x, x) = 2 g'(0)
double g_cap_eval(const Potential& p, const Manifold& m, const Point& x, const Point& y);

}  // namespace geoswarm
