#ifndef ISOPREF_RLS_HPP
#define ISOPREF_RLS_HPP

#include <optional>

#include "isopref/dataset.hpp"
#include "isopref/isotonic.hpp"
#include "isopref/linear.hpp"

namespace isopref {

// Result of the regularized fit at one lambda: an isotonic assignment over
// the unique training inputs paired with the anchoring linear model.
struct RlsSolution {
  IsotonicAssignment f_values;        // aligned with the summary's dag.nodes
  LinearModel g;
  double lambda = 0.0;                // >= 0, or +infinity
  std::vector<double> objective_trace;  // non-increasing
  int iterations = 0;
};

struct RlsOptions {
  int max_iterations = 200;
  double min_decrease = 1e-10;
  // Starting isotonic assignment for the alternation; defaults to the
  // lambda = 0 solution. Must be feasible (isotonic on the summary's DAG).
  std::optional<IsotonicAssignment> init;
};

// Objective: data term (mean squared residual over records, which includes
// the within-point variance) plus lambda / |unique inputs| times the squared
// gap between f and g over unique inputs. At lambda = infinity the penalty
// is identically zero because f is forced onto g.
double rls_objective(const DatasetSummary& s, const IsotonicAssignment& f,
                     const LinearModel& g, double lambda);

// Solves the regularized problem by alternating exact block minimization:
// the g-block is a non-negative least squares fit to f over unique inputs,
// the f-block a weighted isotonic regression blending data and penalty.
// Both blocks are exact and the problem is jointly convex, so the
// alternation reaches the global minimum. lambda = 0 and lambda = infinity
// dispatch to the pure isotonic and pure linear endpoints.
RlsSolution rls_solve(const DatasetSummary& s, double lambda,
                      const RlsOptions& opts = {});
RlsSolution rls_solve(const Dataset& ds, double lambda,
                      const RlsOptions& opts = {});

}  // namespace isopref

#endif
