#ifndef ISOPREF_TEST_SUPPORT_HPP
#define ISOPREF_TEST_SUPPORT_HPP

#include <random>
#include <set>
#include <vector>

#include "isopref/dataset.hpp"
#include "isopref/isotonic.hpp"
#include "isopref/order.hpp"

namespace isopref::test {

// Random small isotonic instance: distinct lattice points (their covering
// DAG can realize any small poset shape), weights in [0.1, 10], targets in
// [-1, 2].
struct RandomInstance {
  OrderDag dag;
  WeightedTargets wt;
};

inline RandomInstance random_instance(std::mt19937_64& rng, int max_nodes = 8) {
  std::uniform_int_distribution<int> d_pick(1, 3);
  std::uniform_int_distribution<int> n_pick(1, max_nodes);
  const int d = d_pick(rng);
  const int m = d == 1 ? 8 : 3;
  std::uniform_int_distribution<int> level(1, m);
  const int want = n_pick(rng);

  std::set<CriteriaVector> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < want && ++guard < 1000) {
    CriteriaVector x(d);
    for (int k = 0; k < d; ++k) x[k] = level(rng);
    pts.insert(x);
  }

  RandomInstance inst;
  inst.dag = build_covering_dag({pts.begin(), pts.end()});
  std::uniform_real_distribution<double> w_pick(0.1, 10.0);
  std::uniform_real_distribution<double> t_pick(-1.0, 2.0);
  for (std::size_t i = 0; i < inst.dag.size(); ++i) {
    inst.wt.weights.push_back(w_pick(rng));
    inst.wt.targets.push_back(t_pick(rng));
  }
  return inst;
}

// All strict dominance pairs (u, v) with node u strictly below node v,
// found by pairwise comparison; independent of the DAG's edge set.
inline std::vector<std::pair<int, int>> dominance_pairs(const OrderDag& dag) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t u = 0; u < dag.size(); ++u)
    for (std::size_t v = 0; v < dag.size(); ++v)
      if (u != v && compare(dag.nodes[u], dag.nodes[v]) == Ordering::dominated)
        pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return pairs;
}

}  // namespace isopref::test

#endif
