#pragma once

#include <optional>
#include <vector>

#include "geoswarm/dynamics.hpp"

namespace geoswarm {

struct EnergyPair {
  // (1/2) sum_ij m_i m_j K(x_i, x_j), self-interaction terms included; this is
  // the continuum energy applied to an atomic measure and is the variant the
  // dissipation identity uses
  double full = 0.0;
  // sum_{i<j} m_i m_j K(x_i, x_j); differs from full by the constant
  // (1/2) sum_i m_i^2 g(0) when g(0) is constant
  double offdiag = 0.0;
};

EnergyPair discrete_energy(const Potential& p, const Manifold& m, const EmpiricalMeasure& rho);

// sum_i m_i |v[rho](x_i)|^2; equals -dE_full/dt along the exact flow
double dissipation(const Manifold& m, const Potential& p, const EmpiricalMeasure& rho);

struct DiameterResult {
  double value = 0.0;
  int i = 0;  // argmax pair, smallest (i, j) lexicographically on ties
  int j = 0;
};

DiameterResult diameter(const Manifold& m, const EmpiricalMeasure& rho);

// c(x) = sum_j m_j G(x, x_j) x_j as an ambient vector (sphere factors only);
// the velocity field is its tangential part: v[rho](x) = c(x) - (c(x).x) x
std::vector<double> weighted_center_field(const Potential& p, const Manifold& m,
                                          const EmpiricalMeasure& rho, const Point& x);

// Margin audit of the weighted-center inequalities for measures supported in
// the closed disk of radius support_radius about the domain center:
//   |c(x)| >= C cos(r)              for x in the domain
//   c(x).z >= |c(x)| cos(2r)        for z in the support disk
//   c(x1).x1 + c(x2).x2 <= c(x1).x2 + c(x2).x1
// Margins are (lhs - bound); all should be >= 0 up to roundoff.
struct CenterAuditReport {
  long trials = 0;
  double min_margin_norm = 0.0;
  double min_margin_cone = 0.0;
  double min_margin_exchange = 0.0;
  long violations(double tol) const {
    return (min_margin_norm < -tol) + (min_margin_cone < -tol) + (min_margin_exchange < -tol);
  }
};

CenterAuditReport audit_center_inequalities(const Potential& p, const Manifold& m,
                                            const EmpiricalMeasure& rho, double support_radius,
                                            double lower_bound_C, int trials,
                                            std::uint64_t seed);

// For points in the quarter disk D_{pi/4} about the domain center, the
// diameter-realizing pair (x1, x2) sees every other point at a non-obtuse
// angle: log_{x1} x2 . log_{x1} x_j >= 0. Returns the worst inner product.
struct ObtuseConeReport {
  int pair_i = 0;
  int pair_j = 0;
  double min_inner_product = 0.0;
};

ObtuseConeReport audit_obtuse_cone(const Manifold& m, const std::vector<Point>& points);

// Numeric constants of the sphere analysis on a domain with parameter eps:
//   C_f, L_f     : sup of f = theta/sin(theta) and of f' on [0, pi - 2 eps]
//   C_g', L_g'   : sup and Lipschitz constant of g' on [0, (pi - 2 eps)^2]
//   L   = 4 pi^2 L_g' + 4 C_g' (C_f + L_f)   (velocity-field Lipschitz constant)
//   Lip = 4 pi^2 L_g' + 4 C_g' (L_f + C_f)   (kernel-vs-measure Lipschitz constant)
//   r(t) = exp((Lip + L + 4 pi C_g') t)      (stability growth factor, r(0) = 1)
struct ConstantsReport {
  double epsilon = 0.0;
  int grid = 0;
  double c_f = 0.0;
  double l_f = 0.0;
  double l_f_finite_diff = 0.0;  // cross-check of l_f via grid differences
  double c_g_prime = 0.0;
  double l_g_prime = 0.0;
  double velocity_bound = 0.0;  // 2 pi C_g'
  double lipschitz_L = 0.0;
  double lipschitz_Lip = 0.0;
  double rate = 0.0;  // Lip + L + 4 pi C_g'
  std::vector<std::pair<double, double>> r_table;

  double r(double t) const;
};

ConstantsReport constants_report(const Potential& p, double epsilon, int grid = 100000,
                                 const std::vector<double>& r_times = {0.0});

struct ConsensusReport {
  bool reached = false;
  std::optional<double> time_to_tol;
  double final_diameter = 0.0;
  Point limit_point_estimate;  // intrinsic (log/exp fixed point) mean of the final state
};

ConsensusReport consensus_report(const TrajectoryRecord& traj, double tol);

}  // namespace geoswarm
