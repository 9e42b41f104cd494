#ifndef ISOPREF_ORDER_HPP
#define ISOPREF_ORDER_HPP

#include <vector>

#include "isopref/lattice.hpp"

namespace isopref {

// Covering relation of coordinate-wise dominance restricted to a node set:
// edge u -> v means u is dominated by v with no third node strictly between.
// The transitive closure of the edges equals the full dominance relation on
// the nodes.
struct OrderDag {
  std::vector<CriteriaVector> nodes;       // lexicographically sorted
  std::vector<std::vector<int>> succ;      // covering edges u -> v
  std::vector<std::vector<int>> pred;      // reverse adjacency

  std::size_t size() const { return nodes.size(); }
  std::size_t edge_count() const;
};

// Function values on the nodes of an OrderDag, index-aligned with dag.nodes.
using IsotonicAssignment = std::vector<double>;

// Builds the covering DAG of distinct points. Points need not be sorted or
// deduplicated on input; nodes come out sorted and unique.
OrderDag build_covering_dag(std::vector<CriteriaVector> points);

// Covering DAG of the complete grid [1,m]^d: one edge per unit step in a
// single coordinate. Nodes are lattice_points(spec), so node index equals
// lattice_index.
OrderDag lattice_covering_dag(const LatticeSpec& spec);

// True iff values respect every covering edge up to tol. Throws if the
// assignment does not cover all nodes.
bool is_isotonic(const OrderDag& dag, const IsotonicAssignment& values,
                 double tol = 1e-12);

}  // namespace isopref

#endif
