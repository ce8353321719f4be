#include "geoswarm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geoswarm/rng.hpp"

namespace geoswarm {

namespace {

constexpr double kPivotTol = 1e-12;

std::vector<double> cost_matrix(const Manifold& m, const EmpiricalMeasure& mu,
                                const EmpiricalMeasure& nu) {
  const int r = mu.size(), c = nu.size();
  std::vector<double> cost(static_cast<std::size_t>(r) * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      cost[static_cast<std::size_t>(i) * c + j] =
          detail::dist_span(m.node(), mu.points()[i].coords(), nu.points()[j].coords());
  return cost;
}

bool uniform_equal_size(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.size() != nu.size()) return false;
  const double m0 = mu.masses()[0];
  for (double v : mu.masses())
    if (v != m0) return false;
  for (double v : nu.masses())
    if (v != m0) return false;
  return true;
}

// Assignment problem with row/column potentials, O(n^3). Returns match[j] =
// row assigned to column j.
std::vector<int> hungarian(const std::vector<double>& a, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  return p;  // p[j], j = 1..n
}

// Transportation simplex on the bipartite supply/demand polytope. Tree basis
// with m + n - 1 arcs; Dantzig pricing over rotating blocks, Bland fallback
// for termination.
struct SimplexSolver {
  int m, n;
  const std::vector<double>& cost;
  const std::vector<double>& a;  // supplies
  const std::vector<double>& b;  // demands

  struct Arc {
    int i, j;
    double f;
  };
  std::vector<Arc> basis;
  std::vector<char> in_basis;            // m*n flags
  std::vector<std::vector<int>> adj;     // node -> indices into basis; sinks offset by m
  std::vector<double> u, v;              // duals

  SimplexSolver(int m_, int n_, const std::vector<double>& c_, const std::vector<double>& a_,
                const std::vector<double>& b_)
      : m(m_), n(n_), cost(c_), a(a_), b(b_), in_basis(static_cast<std::size_t>(m_) * n_, 0),
        adj(m_ + n_), u(m_), v(n_) {}

  void add_basic(int i, int j, double f) {
    in_basis[static_cast<std::size_t>(i) * n + j] = 1;
    basis.push_back({i, j, f});
    adj[i].push_back(static_cast<int>(basis.size()) - 1);
    adj[m + j].push_back(static_cast<int>(basis.size()) - 1);
  }

  void northwest_corner() {
    int i = 0, j = 0;
    double rs = a[0], cd = b[0];
    while (true) {
      const double f = std::min(rs, cd);
      add_basic(i, j, f);
      rs -= f;
      cd -= f;
      if (i == m - 1 && j == n - 1) break;
      if (rs <= cd && i < m - 1) {
        ++i;
        rs = a[i];
      } else {
        ++j;
        cd = b[j];
      }
    }
  }

  void compute_duals() {
    std::vector<char> seen(m + n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    u[0] = 0.0;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int bi : adj[node]) {
        const Arc& arc = basis[bi];
        const int other = (node < m) ? m + arc.j : arc.i;
        if (seen[other]) continue;
        seen[other] = 1;
        const double c = cost[static_cast<std::size_t>(arc.i) * n + arc.j];
        if (other >= m)
          v[arc.j] = c - u[arc.i];
        else
          u[arc.i] = c - v[arc.j];
        stack.push_back(other);
      }
    }
  }

  // tree path between two nodes as a list of basis arc indices
  std::vector<int> tree_path(int from, int to) const {
    std::vector<int> parent_arc(m + n, -1), parent_node(m + n, -1);
    std::vector<char> seen(m + n, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      if (node == to) break;
      for (int bi : adj[node]) {
        const Arc& arc = basis[bi];
        const int other = (node < m) ? m + arc.j : arc.i;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_arc[other] = bi;
        parent_node[other] = node;
        stack.push_back(other);
      }
    }
    std::vector<int> path;
    for (int node = to; node != from; node = parent_node[node]) path.push_back(parent_arc[node]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  int find_entering(long iter, long bland_after, std::size_t& cursor) const {
    const std::size_t total = static_cast<std::size_t>(m) * n;
    if (iter > bland_after) {
      for (std::size_t q = 0; q < total; ++q) {
        if (in_basis[q]) continue;
        const int i = static_cast<int>(q / n), j = static_cast<int>(q % n);
        if (cost[q] - u[i] - v[j] < -kPivotTol) return static_cast<int>(q);
      }
      return -1;
    }
    const std::size_t block = 8192;
    std::size_t scanned = 0;
    while (scanned < total) {
      double best = -kPivotTol;
      long best_q = -1;
      for (std::size_t s = 0; s < block && scanned < total; ++s, ++scanned) {
        const std::size_t q = cursor;
        cursor = (cursor + 1 == total) ? 0 : cursor + 1;
        if (in_basis[q]) continue;
        const int i = static_cast<int>(q / n), j = static_cast<int>(q % n);
        const double red = cost[q] - u[i] - v[j];
        if (red < best) {
          best = red;
          best_q = static_cast<long>(q);
        }
      }
      if (best_q >= 0) return static_cast<int>(best_q);
    }
    return -1;
  }

  void pivot(int q) {
    const int ei = q / n, ej = q % n;
    const auto path = tree_path(m + ej, ei);
    // cycle: entering (ei -> sink ej) carries +theta; walking from the sink
    // back to ei, odd-position arcs carry -theta, even +theta
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0 && basis[path[k]].f < theta) {
        theta = basis[path[k]].f;
        leave = path[k];
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k)
      basis[path[k]].f += (k % 2 == 0) ? -theta : theta;

    const Arc leaving = basis[leave];
    in_basis[static_cast<std::size_t>(leaving.i) * n + leaving.j] = 0;
    auto remove_from = [&](int node, int arc_idx) {
      auto& lst = adj[node];
      lst.erase(std::find(lst.begin(), lst.end(), arc_idx));
    };
    remove_from(leaving.i, leave);
    remove_from(m + leaving.j, leave);

    basis[leave] = {ei, ej, theta};
    in_basis[q] = 1;
    adj[ei].push_back(leave);
    adj[m + ej].push_back(leave);
  }

  TransportPlan solve() {
    northwest_corner();
    const long bland_after = 200L * (m + n);
    const long hard_cap = 5000L * (m + n) + 100000L;
    std::size_t cursor = 0;
    for (long iter = 0;; ++iter) {
      if (iter > hard_cap) throw Error("transport simplex exceeded the pivot cap");
      compute_duals();
      const int q = find_entering(iter, bland_after, cursor);
      if (q < 0) break;
      pivot(q);
    }
    TransportPlan plan;
    plan.rows = m;
    plan.cols = n;
    plan.flow.assign(static_cast<std::size_t>(m) * n, 0.0);
    double total_cost = 0.0;
    for (const Arc& arc : basis) {
      plan.flow[static_cast<std::size_t>(arc.i) * n + arc.j] += arc.f;
      total_cost += arc.f * cost[static_cast<std::size_t>(arc.i) * n + arc.j];
    }
    plan.cost = total_cost;
    return plan;
  }
};

}  // namespace

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> s(rows, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) s[i] += at(i, j);
  return s;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> s(cols, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) s[j] += at(i, j);
  return s;
}

W1Result w1(const Manifold& m, const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const auto cost = cost_matrix(m, mu, nu);
  const int r = mu.size(), c = nu.size();

  if (uniform_equal_size(mu, nu)) {
    const int n = r;
    const double mass = mu.masses()[0];
    const auto p = hungarian(cost, n);
    TransportPlan plan;
    plan.rows = plan.cols = n;
    plan.flow.assign(static_cast<std::size_t>(n) * n, 0.0);
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
      const int i = p[j] - 1;
      plan.flow[static_cast<std::size_t>(i) * n + (j - 1)] = mass;
      total += mass * cost[static_cast<std::size_t>(i) * n + (j - 1)];
    }
    plan.cost = total;
    return W1Result{total, std::move(plan)};
  }

  SimplexSolver solver(r, c, cost, mu.masses(), nu.masses());
  TransportPlan plan = solver.solve();
  const double d = plan.cost;
  return W1Result{d, std::move(plan)};
}

double w1_bruteforce(const Manifold& m, const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const int n = mu.size();
  if (n != nu.size()) throw Degenerate("w1_bruteforce requires equal-size supports");
  if (n > 8) throw TooLarge("w1_bruteforce is limited to 8 atoms");
  if (!uniform_equal_size(mu, nu))
    throw Degenerate("w1_bruteforce requires uniform masses");
  const auto cost = cost_matrix(m, mu, nu);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += cost[static_cast<std::size_t>(i) * n + perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / n;
}

double w1_sup_over_time(const TrajectoryRecord& a, const TrajectoryRecord& b) {
  if (a.times.size() != b.times.size())
    throw TimeGridMismatch("trajectories record different numbers of times");
  for (std::size_t k = 0; k < a.times.size(); ++k)
    if (std::abs(a.times[k] - b.times[k]) > 1e-12)
      throw TimeGridMismatch("trajectories record different time grids");
  double sup = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    const auto res = w1(a.states[k].manifold(), a.states[k], b.states[k]);
    sup = std::max(sup, res.distance);
  }
  return sup;
}

std::vector<MeanfieldRow> meanfield_experiment(const SimConfig& base,
                                               const std::vector<int>& n_list, int reference_n) {
  if (!std::holds_alternative<DiskSpec>(base.initial))
    throw ConfigError("meanfield_experiment requires disk-sampled initial data");
  for (int n : n_list)
    if (n < 1) throw ConfigError("meanfield n values must be >= 1");
  if (reference_n < *std::max_element(n_list.begin(), n_list.end()))
    throw ConfigError("reference_n must be at least max(n_list)");

  SimConfig ref_cfg = base;
  auto ref_spec = std::get<DiskSpec>(base.initial);
  ref_spec.n = reference_n;
  ref_cfg.initial = ref_spec;
  const TrajectoryRecord ref = simulate(ref_cfg);
  if (ref.aborted()) throw Error("meanfield reference run aborted: " + ref.abort->message);

  double r_bound = std::numeric_limits<double>::quiet_NaN();
  const auto kind = base.manifold.kind();
  if (kind == ManifoldKind::SphereHemisphere || kind == ManifoldKind::CircleArc) {
    const auto rep = constants_report(base.potential, base.manifold.epsilon(), 100000,
                                      {base.t_end});
    r_bound = rep.r_table[0].second;
  }

  std::vector<MeanfieldRow> rows;
  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    SimConfig cfg = base;
    auto spec = std::get<DiskSpec>(base.initial);
    spec.n = n_list[idx];
    cfg.initial = spec;
    cfg.seed = (n_list[idx] == reference_n) ? base.seed : mix_seed(base.seed, idx + 1);
    const TrajectoryRecord run = simulate(cfg);
    if (run.aborted()) throw Error("meanfield run aborted: " + run.abort->message);

    MeanfieldRow row;
    row.n = n_list[idx];
    row.seed = cfg.seed;
    row.w1_initial = w1(base.manifold, run.states.front(), ref.states.front()).distance;
    row.w1_sup = w1_sup_over_time(run, ref);
    row.ratio = (row.w1_initial == 0.0) ? 0.0 : row.w1_sup / row.w1_initial;
    row.r_bound = r_bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace geoswarm
