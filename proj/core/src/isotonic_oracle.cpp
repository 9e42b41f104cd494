#include "isopref/isotonic_oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace isopref {

double isotonic_objective(const WeightedTargets& wt,
                          const IsotonicAssignment& values) {
  double obj = 0.0;
  for (std::size_t u = 0; u < values.size(); ++u) {
    const double r = values[u] - wt.targets[u];
    obj += wt.weights[u] * r * r;
  }
  return obj;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

IsotonicAssignment isotonic_oracle(const OrderDag& dag,
                                   const WeightedTargets& wt) {
  const int n = static_cast<int>(dag.size());
  if (wt.targets.size() != dag.size() || wt.weights.size() != dag.size())
    throw std::invalid_argument("isotonic_oracle: size mismatch with DAG");

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v : dag.succ[u]) edges.emplace_back(u, v);

  if (n > 10 || edges.size() > 20)
    throw std::invalid_argument("isotonic_oracle: instance too large (test-only)");

  const double feas_tol = 1e-9;
  double best_obj = std::numeric_limits<double>::infinity();
  IsotonicAssignment best;

  std::vector<int> parent(n);
  std::vector<double> wsum(n), twsum(n);
  IsotonicAssignment values(n);

  const std::uint64_t subsets = 1ull << edges.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    for (int i = 0; i < n; ++i) parent[i] = i;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (mask & (1ull << e)) {
        const int a = find_root(parent, edges[e].first);
        const int b = find_root(parent, edges[e].second);
        if (a != b) parent[a] = b;
      }
    }
    std::fill(wsum.begin(), wsum.end(), 0.0);
    std::fill(twsum.begin(), twsum.end(), 0.0);
    for (int u = 0; u < n; ++u) {
      const int r = find_root(parent, u);
      wsum[r] += wt.weights[u];
      twsum[r] += wt.weights[u] * wt.targets[u];
    }
    for (int u = 0; u < n; ++u) {
      const int r = find_root(parent, u);
      values[u] = twsum[r] / wsum[r];
    }
    bool feasible = true;
    for (const auto& [u, v] : edges) {
      if (values[u] > values[v] + feas_tol) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    const double obj = isotonic_objective(wt, values);
    if (obj < best_obj) {
      best_obj = obj;
      best = values;
    }
  }
  return best;
}

}  // namespace isopref
