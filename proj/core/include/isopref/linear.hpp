#ifndef ISOPREF_LINEAR_HPP
#define ISOPREF_LINEAR_HPP

#include <vector>

#include "isopref/lattice.hpp"

namespace isopref {

// Non-decreasing linear function a.x + b with a >= 0 and a free intercept.
struct LinearModel {
  std::vector<double> slopes;
  double intercept = 0.0;

  double operator()(const CriteriaVector& x) const;
};

// Weighted non-negative least squares over criteria points:
//   minimize sum_u w_u (a.x_u + b - t_u)^2  subject to a >= 0, b free.
// Active-set method on the slope coordinates; the intercept is always solved
// unconstrained. Weights default to 1.
LinearModel nnls_fit(const std::vector<CriteriaVector>& points,
                     const std::vector<double>& targets,
                     const std::vector<double>& weights = {});

}  // namespace isopref

#endif
