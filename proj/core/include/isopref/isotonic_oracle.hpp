#ifndef ISOPREF_ISOTONIC_ORACLE_HPP
#define ISOPREF_ISOTONIC_ORACLE_HPP

#include "isopref/isotonic.hpp"

namespace isopref {

// Brute-force reference for isotonic_fit, restricted to tiny instances
// (<= 10 nodes, <= 20 covering edges). Enumerates every subset of covering
// edges as the active (equality) set, pools each induced node group at its
// weighted mean, and keeps the feasible candidate with the least objective.
// The optimizer's active set is one of the subsets, so the minimum over
// feasible candidates is the exact global solution.
IsotonicAssignment isotonic_oracle(const OrderDag& dag,
                                   const WeightedTargets& wt);

// Objective sum_u w_u (f_u - t_u)^2, shared by solver tests.
double isotonic_objective(const WeightedTargets& wt,
                          const IsotonicAssignment& values);

}  // namespace isopref

#endif
