#ifndef ISOPREF_METRICS_HPP
#define ISOPREF_METRICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "isopref/preference_model.hpp"

namespace isopref {

// Probability mass on grid points. When built from a dataset the total
// record count is kept so weighted standard errors can be reported.
struct EmpiricalDistribution {
  std::vector<CriteriaVector> support;
  std::vector<double> probabilities;  // nonnegative, sum 1
  std::optional<std::size_t> n_samples;

  void validate() const;
  static EmpiricalDistribution uniform(const LatticeSpec& spec);
  static EmpiricalDistribution from_dataset(const Dataset& ds);
};

struct MetricReport {
  double prediction_error = 0.0;
  double prediction_error_se = 0.0;
  double irreducible_error = 0.0;
  double reducible_error = 0.0;
  double reducible_error_se = 0.0;  // prediction-error SE, used as a bound
  std::size_t n_test = 0;
};

// Mean squared residual over a labeled test set; SE is the sample standard
// deviation of the squared residuals over sqrt(n).
std::pair<double, double> prediction_error(const PreferenceModel& model,
                                           const Dataset& test);

// Least mean squared residual any isotonic function can reach on the
// dataset: pooled-fit residual over unique inputs plus within-point
// variance, divided by the record count.
double irreducible_error(const Dataset& ds);

// Prediction error minus irreducible error, both on the test set. The SE is
// the prediction-error SE, used as an upper bound.
std::pair<double, double> reducible_error(const PreferenceModel& model,
                                          const Dataset& test);

MetricReport metric_report(const PreferenceModel& model, const Dataset& test);

// sum_x P(x) (truth(x) - model(x))^2.
double estimation_error(const PreferenceModel& model,
                        const std::function<double(const CriteriaVector&)>& truth,
                        const EmpiricalDistribution& p);

// sum_x P(x) (fa(x) - fb(x))^2; the SE is available when P carries a sample
// count (weighted standard error of the mean across support points).
struct Misalignment {
  double value = 0.0;
  std::optional<double> se;
};
Misalignment preference_misalignment(const PreferenceModel& fa,
                                     const PreferenceModel& fb,
                                     const EmpiricalDistribution& p);

// Tie-aware normalized Kendall distance over all unordered grid-point pairs:
// 1 when the two functions rank a pair in opposite strict orders, 1/2 when
// fa ties a pair that fb ranks strictly, 0 otherwise. fa plays the estimate.
// Exact enumeration; rejects grids above 10^6 points.
double kendall_tau_distance(
    const std::function<double(const CriteriaVector&)>& fa,
    const std::function<double(const CriteriaVector&)>& fb,
    const LatticeSpec& spec);

// Monte-Carlo estimate over sampled pairs for grids too large to enumerate;
// returns (estimate, standard error).
std::pair<double, double> kendall_tau_sampled(
    const std::function<double(const CriteriaVector&)>& fa,
    const std::function<double(const CriteriaVector&)>& fb,
    const LatticeSpec& spec, std::uint64_t n_pairs, std::uint64_t seed);

// Percentile bootstrap confidence interval (2.5% / 97.5%) of a dataset
// statistic under resampling records with replacement.
std::pair<double, double> bootstrap_ci(
    const std::function<double(const Dataset&)>& statistic, const Dataset& ds,
    int resamples, std::uint64_t seed);

// Model values along one criterion with the others pinned, plus the
// delta-method error-bar halfwidth 1.96 * SE(prediction) / (2 sqrt(reducible
// error)). The halfwidth is absent when the reducible error is not positive.
struct CurvePoint {
  int level = 0;
  double value = 0.0;
  std::optional<double> halfwidth;
};
std::vector<CurvePoint> criteria_effect_curve(const PreferenceModel& model,
                                              int vary_criterion,
                                              const CriteriaVector& fixed_levels,
                                              const MetricReport& report);

}  // namespace isopref

#endif
