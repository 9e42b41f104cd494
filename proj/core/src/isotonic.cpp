#include "isopref/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace isopref {

namespace {

constexpr double kSplitTol = 1e-9;
constexpr double kFlowEps = 1e-12;

// Dinic max-flow on a small dense-ish graph with double capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : head_(n, -1), level_(n), it_(n) {}

  void add_edge(int u, int v, double cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], 0.0});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }

  double max_flow(int s, int t) {
    double flow = 0.0;
    while (bfs(s, t)) {
      it_ = head_;
      for (;;) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::max());
        if (pushed <= kFlowEps) break;
        flow += pushed;
      }
    }
    return flow;
  }

  // Vertices reachable from s in the residual graph (the source side of a
  // minimum cut). Valid after max_flow.
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > kFlowEps && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          q.push(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    int next;
    double cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > kFlowEps && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& e = it_[u]; e != -1; e = edges_[e].next) {
      Edge& ed = edges_[e];
      if (ed.cap > kFlowEps && level_[ed.to] == level_[u] + 1) {
        const double pushed = dfs(ed.to, t, std::min(limit, ed.cap));
        if (pushed > kFlowEps) {
          ed.cap -= pushed;
          edges_[e ^ 1].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

struct Solver {
  const OrderDag& dag;
  const WeightedTargets& wt;
  IsotonicAssignment out;
  std::vector<int> stamp;   // block membership marker per node
  std::vector<int> local;   // node id -> index within the current block
  int current_stamp = 0;

  Solver(const OrderDag& d, const WeightedTargets& w)
      : dag(d), wt(w), out(d.size(), 0.0), stamp(d.size(), -1),
        local(d.size(), -1) {}

  void solve(std::vector<int> block) {
    if (block.size() == 1) {
      out[block[0]] = wt.targets[block[0]];
      return;
    }

    double wsum = 0.0, twsum = 0.0;
    bool all_equal = true;
    for (int u : block) {
      wsum += wt.weights[u];
      twsum += wt.weights[u] * wt.targets[u];
      if (wt.targets[u] != wt.targets[block[0]]) all_equal = false;
    }
    if (all_equal) {  // pooled mean is the common target, kept exact
      for (int u : block) out[u] = wt.targets[block[0]];
      return;
    }
    const double mu = twsum / wsum;

    // Max-weight upper set for node weights w_u (t_u - mu), via the usual
    // closure reduction: the set must be closed under covering successors,
    // so order edges get infinite capacity.
    const int n = static_cast<int>(block.size());
    const int s = n, t = n + 1;
    ++current_stamp;
    for (int i = 0; i < n; ++i) {
      stamp[block[i]] = current_stamp;
      local[block[i]] = i;
    }

    double total_pos = 0.0, total_abs = 0.0;
    for (int u : block) {
      const double c = wt.weights[u] * (wt.targets[u] - mu);
      total_abs += std::abs(c);
      if (c > 0) total_pos += c;
    }
    const double inf_cap = total_abs + 1.0;

    FlowNetwork net(n + 2);
    for (int i = 0; i < n; ++i) {
      const int u = block[i];
      const double c = wt.weights[u] * (wt.targets[u] - mu);
      if (c > 0)
        net.add_edge(s, i, c);
      else if (c < 0)
        net.add_edge(i, t, -c);
      for (int v : dag.succ[u])
        if (stamp[v] == current_stamp) net.add_edge(i, local[v], inf_cap);
    }

    const double best = total_pos - net.max_flow(s, t);
    if (best <= kSplitTol) {
      for (int u : block) out[u] = mu;
      return;
    }

    const std::vector<char> side = net.source_side(s);
    std::vector<int> upper, lower;
    for (int i = 0; i < n; ++i)
      (side[i] ? upper : lower).push_back(block[i]);

    // A strictly positive value guarantees both sides are nonempty.
    if (upper.empty() || lower.empty()) {
      for (int u : block) out[u] = mu;
      return;
    }
    solve(std::move(lower));
    solve(std::move(upper));
  }
};

}  // namespace

namespace {

bool acyclic(const OrderDag& dag) {
  const std::size_t n = dag.size();
  std::vector<int> indeg(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (int v : dag.succ[u]) ++indeg[v];
  std::vector<int> ready;
  for (std::size_t u = 0; u < n; ++u)
    if (indeg[u] == 0) ready.push_back(static_cast<int>(u));
  std::size_t seen = 0;
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    ++seen;
    for (int v : dag.succ[u])
      if (--indeg[v] == 0) ready.push_back(v);
  }
  return seen == n;
}

}  // namespace

IsotonicAssignment isotonic_fit(const OrderDag& dag, const WeightedTargets& wt) {
  const std::size_t n = dag.size();
  if (wt.targets.size() != n || wt.weights.size() != n)
    throw std::invalid_argument("isotonic_fit: size mismatch with DAG");
  for (double w : wt.weights)
    if (!(w > 0.0)) throw std::invalid_argument("isotonic_fit: weights must be > 0");
  if (!acyclic(dag)) throw std::invalid_argument("isotonic_fit: cyclic order graph");
  if (n == 0) return {};

  Solver solver(dag, wt);
  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  solver.solve(std::move(all));
  return solver.out;
}

}  // namespace isopref
