#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "geoswarm/measure.hpp"
#include "geoswarm/potential.hpp"

namespace geoswarm {

enum class Scheme { GeodesicEuler, RK4Projected };

// initial data drawn uniformly from the geodesic disk D_radius(center)
struct DiskSpec {
  Point center;
  double radius = 0.0;
  int n = 0;
};

struct SimConfig {
  Manifold manifold;
  Potential potential;
  std::variant<EmpiricalMeasure, DiskSpec> initial;
  double h = 1e-2;
  double t_end = 10.0;
  Scheme scheme = Scheme::GeodesicEuler;
  int record_every = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  // optional hard limit on cylinder z-drift away from the reference center;
  // unset means the z extent is only reported
  std::optional<double> z_limit;
};

struct StepDiagnostics {
  double t = 0.0;
  double energy_full = 0.0;     // (1/2) sum_ij m_i m_j K(x_i, x_j), self terms included
  double energy_offdiag = 0.0;  // sum_{i<j} m_i m_j K(x_i, x_j)
  double dissipation = 0.0;     // sum_i m_i |v_i|^2
  double diameter = 0.0;        // max pairwise geodesic distance
  double disk_radius_max = 0.0; // max_i d(x_i, reference center)
  double z_extent = 0.0;        // max |z_i - z_center| over cylinder factors
};

struct AbortInfo {
  long step_index = 0;
  int particle_index = -1;
  std::string message;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<EmpiricalMeasure> states;
  std::vector<StepDiagnostics> diagnostics;
  Point reference_center;  // disk center used for disk_radius_max
  std::optional<AbortInfo> abort;

  bool aborted() const { return abort.has_value(); }
  const EmpiricalMeasure& final_state() const { return states.back(); }
};

// v[rho](x) = sum_j m_j 2 g'(d(x, x_j)^2) log_x x_j. Per-component sums use a
// sorted (order-independent) accumulation, so the result is exactly invariant
// under permutations of the atoms.
Tangent velocity(const Manifold& m, const Potential& p, const EmpiricalMeasure& rho,
                 const Point& x);

// One synchronous step: all velocities from the pre-step state, masses
// unchanged. GeodesicEuler: x_i <- exp_{x_i}(h v_i). RK4Projected: classical
// four-stage update in ambient coordinates, slopes projected to the tangent
// space and stage points retracted to the manifold.
EmpiricalMeasure step(const Manifold& m, const Potential& p, const EmpiricalMeasure& state,
                      double h, Scheme scheme);

// Integrates to t_end, recording every record_every-th step plus t = 0 and
// t_end. A DomainViolation mid-run aborts and returns the partial record with
// abort info filled in.
TrajectoryRecord simulate(const SimConfig& cfg);

struct ProductDecoupledResult {
  TrajectoryRecord product;
  TrajectoryRecord left;
  TrajectoryRecord right;
};

// For a product manifold with the half-quadratic potential the dynamics
// separate; runs the coupled product system and both component systems with
// matched initial data and steps so tests can compare them directly.
ProductDecoupledResult simulate_product_decoupled(const SimConfig& cfg);

}  // namespace geoswarm
