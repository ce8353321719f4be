#pragma once

#include <cstdint>
#include <vector>

#include "geoswarm/analysis.hpp"
#include "geoswarm/dynamics.hpp"

namespace geoswarm {

// Feasible transport plan between two weighted atom sets: row sums equal the
// source masses, column sums the target masses.
struct TransportPlan {
  int rows = 0;
  int cols = 0;
  std::vector<double> flow;  // row-major rows x cols
  double cost = 0.0;

  double at(int i, int j) const { return flow[static_cast<std::size_t>(i) * cols + j]; }
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
};

struct W1Result {
  double distance = 0.0;
  TransportPlan plan;
};

// Exact intrinsic 1-Wasserstein distance: minimizes sum pi_ij d(x_i, y_j) over
// transport plans. Solved by a transportation network simplex (reduced-cost
// tolerance 1e-12); uniform equal-size inputs take an assignment-problem fast
// path (Hungarian algorithm with potentials).
W1Result w1(const Manifold& m, const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

// Oracle: minimum over all n! matchings of the average matched distance, for
// uniform equal-size supports with n <= 8. Equals the LP optimum for uniform
// marginals (Birkhoff-von Neumann).
double w1_bruteforce(const Manifold& m, const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

// sup over the shared recording grid of W1(rho_t, sigma_t)
double w1_sup_over_time(const TrajectoryRecord& a, const TrajectoryRecord& b);

struct MeanfieldRow {
  int n = 0;
  std::uint64_t seed = 0;
  double w1_initial = 0.0;
  double w1_sup = 0.0;
  double ratio = 0.0;    // w1_sup / w1_initial (0 when both vanish)
  double r_bound = 0.0;  // stability growth factor r(eps, t_end); NaN off sphere factors
};

// Runs a reference simulation with reference_n atoms, then for each n in
// n_list an independently seeded run from the same disk law, and reports the
// initial and sup-over-time W1 against the reference. Rows with
// n == reference_n reuse the reference seed (and so give zero columns).
std::vector<MeanfieldRow> meanfield_experiment(const SimConfig& base,
                                               const std::vector<int>& n_list, int reference_n);

}  // namespace geoswarm
