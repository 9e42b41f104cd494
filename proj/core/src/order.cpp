#include "isopref/order.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace isopref {

std::size_t OrderDag::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ) n += s.size();
  return n;
}

namespace {

bool strictly_below(const CriteriaVector& a, const CriteriaVector& b) {
  // a < b coordinate-wise with a != b
  bool lt = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) lt = true;
  }
  return lt;
}

}  // namespace

OrderDag build_covering_dag(std::vector<CriteriaVector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  OrderDag dag;
  dag.nodes = std::move(points);
  const int n = static_cast<int>(dag.nodes.size());
  dag.succ.assign(n, {});
  dag.pred.assign(n, {});
  if (n == 0) return dag;

  std::vector<int> coord_sum(n, 0);
  for (int i = 0; i < n; ++i)
    coord_sum[i] = std::accumulate(dag.nodes[i].begin(), dag.nodes[i].end(), 0);

  // Nodes ordered by coordinate sum; strict dominance always increases the sum.
  std::vector<int> by_sum(n);
  std::iota(by_sum.begin(), by_sum.end(), 0);
  std::stable_sort(by_sum.begin(), by_sum.end(),
                   [&](int a, int b) { return coord_sum[a] < coord_sum[b]; });

  std::vector<int> covers;
  for (int u = 0; u < n; ++u) {
    covers.clear();
    // Scan candidate dominators in ascending sum order; v covers u iff no
    // already-accepted cover lies strictly between u and v.
    for (int idx = 0; idx < n; ++idx) {
      const int v = by_sum[idx];
      if (coord_sum[v] <= coord_sum[u]) continue;
      if (!strictly_below(dag.nodes[u], dag.nodes[v])) continue;
      bool reachable = false;
      for (int c : covers) {
        if (strictly_below(dag.nodes[c], dag.nodes[v])) {
          reachable = true;
          break;
        }
      }
      if (!reachable) covers.push_back(v);
    }
    for (int v : covers) {
      dag.succ[u].push_back(v);
      dag.pred[v].push_back(u);
    }
  }
  return dag;
}

OrderDag lattice_covering_dag(const LatticeSpec& spec) {
  OrderDag dag;
  dag.nodes = lattice_points(spec);
  const std::size_t n = dag.nodes.size();
  dag.succ.assign(n, {});
  dag.pred.assign(n, {});

  // Strides of each coordinate in lexicographic indexing.
  std::vector<std::uint64_t> stride(spec.d, 1);
  for (int k = spec.d - 2; k >= 0; --k)
    stride[k] = stride[k + 1] * static_cast<std::uint64_t>(spec.m);

  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < spec.d; ++k) {
      if (dag.nodes[i][k] < spec.m) {
        const std::size_t j = i + stride[k];
        dag.succ[i].push_back(static_cast<int>(j));
        dag.pred[j].push_back(static_cast<int>(i));
      }
    }
  }
  return dag;
}

bool is_isotonic(const OrderDag& dag, const IsotonicAssignment& values,
                 double tol) {
  if (values.size() != dag.nodes.size())
    throw std::invalid_argument("is_isotonic: assignment does not cover all nodes");
  for (std::size_t u = 0; u < dag.nodes.size(); ++u)
    for (int v : dag.succ[u])
      if (values[u] > values[v] + tol) return false;
  return true;
}

}  // namespace isopref
