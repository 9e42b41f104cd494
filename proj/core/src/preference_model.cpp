#include "isopref/preference_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isopref {

namespace {

double clamp01(double v) { return std::min(std::max(v, 0.0), 1.0); }

}  // namespace

double PreferenceModel::evaluate(const CriteriaVector& x) const {
  if (!in_lattice(x, spec))
    throw std::invalid_argument("evaluate: point off the criteria grid");

  const auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it != points.end() && *it == x)
    return values[static_cast<std::size_t>(it - points.begin())];

  if (mode == Mode::linear_extrapolate) return clamp01((*g)(x));

  // Midpoint of the tightest observed bounds. The global extremes always
  // participate, so the result stays in [trained_min, trained_max].
  double min_above = trained_max;
  double max_below = trained_min;
  for (std::size_t u = 0; u < points.size(); ++u) {
    const Ordering ord = compare(points[u], x);
    if (ord == Ordering::dominates)
      min_above = std::min(min_above, values[u]);
    else if (ord == Ordering::dominated)
      max_below = std::max(max_below, values[u]);
  }
  return 0.5 * (min_above + max_below);
}

PreferenceModel post_process(const RlsSolution& sol, const DatasetSummary& s) {
  if (sol.f_values.size() != s.points.size())
    throw std::invalid_argument("post_process: solution/summary mismatch");

  PreferenceModel model;
  model.spec = s.spec;
  model.points = s.dag.nodes;
  model.values.resize(sol.f_values.size());
  for (std::size_t u = 0; u < sol.f_values.size(); ++u)
    model.values[u] = clamp01(sol.f_values[u]);

  model.mode = std::isinf(sol.lambda) ? PreferenceModel::Mode::linear_extrapolate
                                      : PreferenceModel::Mode::interpolate;
  if (model.mode == PreferenceModel::Mode::linear_extrapolate) model.g = sol.g;

  const auto [lo, hi] =
      std::minmax_element(model.values.begin(), model.values.end());
  model.trained_min = *lo;
  model.trained_max = *hi;
  return model;
}

PreferenceModel post_process(const RlsSolution& sol, const Dataset& ds) {
  return post_process(sol, summarize(ds));
}

std::vector<double> evaluate_lattice(const PreferenceModel& model) {
  const LatticeSpec& spec = model.spec;
  spec.validate();
  const std::uint64_t n = spec.lattice_size();

  std::vector<double> result(n);
  if (model.mode == PreferenceModel::Mode::linear_extrapolate) {
    const std::vector<CriteriaVector> pts = lattice_points(spec);
    for (std::uint64_t i = 0; i < n; ++i)
      result[i] = clamp01((*model.g)(pts[i]));
    for (std::size_t u = 0; u < model.points.size(); ++u)
      result[lattice_index(model.points[u], spec)] = model.values[u];
    return result;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> min_above(n, kInf), max_below(n, -kInf);
  std::vector<char> observed(n, 0);
  for (std::size_t u = 0; u < model.points.size(); ++u) {
    const std::uint64_t i = lattice_index(model.points[u], spec);
    observed[i] = 1;
    min_above[i] = model.values[u];
    max_below[i] = model.values[u];
  }

  std::vector<std::uint64_t> stride(spec.d, 1);
  for (int k = spec.d - 2; k >= 0; --k)
    stride[k] = stride[k + 1] * static_cast<std::uint64_t>(spec.m);

  // min over observed dominators: sweep against lexicographic order so every
  // +1-coordinate successor is already final.
  const std::vector<CriteriaVector> pts = lattice_points(spec);
  for (std::uint64_t r = n; r-- > 0;)
    for (int k = 0; k < spec.d; ++k)
      if (pts[r][k] < spec.m)
        min_above[r] = std::min(min_above[r], min_above[r + stride[k]]);
  // max over observed dominated points: forward sweep.
  for (std::uint64_t r = 0; r < n; ++r)
    for (int k = 0; k < spec.d; ++k)
      if (pts[r][k] > 1)
        max_below[r] = std::max(max_below[r], max_below[r - stride[k]]);

  for (std::uint64_t r = 0; r < n; ++r) {
    if (observed[r]) {
      result[r] = min_above[r];  // the stored trained value
      continue;
    }
    const double a = std::min(min_above[r], model.trained_max);
    const double b = std::max(max_below[r], model.trained_min);
    result[r] = 0.5 * (a + b);
  }
  return result;
}

}  // namespace isopref
