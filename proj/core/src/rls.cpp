#include "isopref/rls.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isopref {

namespace {

std::vector<CriteriaVector> unique_points(const DatasetSummary& s) {
  return s.dag.nodes;
}

double data_term(const DatasetSummary& s, const IsotonicAssignment& f) {
  double ss = s.within_ss;
  for (std::size_t u = 0; u < s.points.size(); ++u) {
    const double r = f[u] - s.points[u].mean_y;
    ss += s.points[u].count * r * r;
  }
  return ss / static_cast<double>(s.n_records);
}

}  // namespace

double rls_objective(const DatasetSummary& s, const IsotonicAssignment& f,
                     const LinearModel& g, double lambda) {
  double obj = data_term(s, f);
  if (lambda > 0.0 && std::isfinite(lambda)) {
    double pen = 0.0;
    for (std::size_t u = 0; u < s.points.size(); ++u) {
      const double r = f[u] - g(s.points[u].point);
      pen += r * r;
    }
    obj += lambda * pen / static_cast<double>(s.points.size());
  }
  return obj;
}

RlsSolution rls_solve(const DatasetSummary& s, double lambda,
                      const RlsOptions& opts) {
  if (std::isnan(lambda) || lambda < 0.0)
    throw std::invalid_argument("rls_solve: lambda must be >= 0 or infinity");
  const std::size_t nu = s.points.size();
  if (nu == 0) throw std::invalid_argument("rls_solve: empty summary");

  RlsSolution sol;
  sol.lambda = lambda;

  std::vector<double> mean_targets(nu), count_weights(nu);
  for (std::size_t u = 0; u < nu; ++u) {
    mean_targets[u] = s.points[u].mean_y;
    count_weights[u] = static_cast<double>(s.points[u].count) /
                       static_cast<double>(s.n_records);
  }
  const std::vector<CriteriaVector> pts = unique_points(s);

  if (std::isinf(lambda)) {
    // Pure linear endpoint: fitting over records is the same weighted
    // problem over unique inputs.
    std::vector<double> counts(nu);
    for (std::size_t u = 0; u < nu; ++u)
      counts[u] = static_cast<double>(s.points[u].count);
    sol.g = nnls_fit(pts, mean_targets, counts);
    sol.f_values.resize(nu);
    for (std::size_t u = 0; u < nu; ++u) sol.f_values[u] = sol.g(pts[u]);
    sol.objective_trace.push_back(data_term(s, sol.f_values));
    return sol;
  }

  // Pure isotonic endpoint doubles as the default initializer.
  IsotonicAssignment f;
  if (opts.init) {
    if (opts.init->size() != nu)
      throw std::invalid_argument("rls_solve: init size mismatch");
    f = *opts.init;
  } else {
    f = isotonic_fit(s.dag, {mean_targets, count_weights});
  }

  if (lambda == 0.0) {
    if (opts.init) f = isotonic_fit(s.dag, {mean_targets, count_weights});
    sol.f_values = f;
    sol.g = nnls_fit(pts, f);  // diagnostics only; objective ignores g
    sol.objective_trace.push_back(data_term(s, sol.f_values));
    return sol;
  }

  const double pen_w = lambda / static_cast<double>(nu);
  double prev = std::numeric_limits<double>::infinity();
  WeightedTargets blend;
  blend.targets.resize(nu);
  blend.weights.resize(nu);
  for (int it = 0; it < opts.max_iterations; ++it) {
    sol.g = nnls_fit(pts, f);  // g-step: unweighted over unique inputs
    for (std::size_t u = 0; u < nu; ++u) {  // f-step
      const double w = count_weights[u] + pen_w;
      blend.weights[u] = w;
      blend.targets[u] =
          (count_weights[u] * mean_targets[u] + pen_w * sol.g(pts[u])) / w;
    }
    f = isotonic_fit(s.dag, blend);
    const double obj = rls_objective(s, f, sol.g, lambda);
    sol.objective_trace.push_back(obj);
    sol.iterations = it + 1;
    if (prev - obj < opts.min_decrease) break;
    prev = obj;
  }
  sol.f_values = std::move(f);
  return sol;
}

RlsSolution rls_solve(const Dataset& ds, double lambda, const RlsOptions& opts) {
  return rls_solve(summarize(ds), lambda, opts);
}

}  // namespace isopref
