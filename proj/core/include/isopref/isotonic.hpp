#ifndef ISOPREF_ISOTONIC_HPP
#define ISOPREF_ISOTONIC_HPP

#include "isopref/order.hpp"

namespace isopref {

// Inputs of the weighted least-squares isotonic problem on a DAG:
// minimize sum_u w_u (f_u - t_u)^2 subject to f_u <= f_v on order pairs.
struct WeightedTargets {
  std::vector<double> targets;
  std::vector<double> weights;  // strictly positive
};

// Exact solver. Recursively partitions node blocks: a block whose every
// upper set has weighted mean at most the block mean is a level set and is
// pooled; otherwise the best upper set, found as a minimum cut, splits the
// block and both sides are solved independently. Splits with improvement
// below 1e-9 are treated as level sets to keep floating-point noise from
// driving the recursion.
IsotonicAssignment isotonic_fit(const OrderDag& dag, const WeightedTargets& wt);

}  // namespace isopref

#endif
