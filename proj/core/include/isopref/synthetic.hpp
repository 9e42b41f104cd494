#ifndef ISOPREF_SYNTHETIC_HPP
#define ISOPREF_SYNTHETIC_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "isopref/cross_validation.hpp"
#include "isopref/dataset.hpp"

namespace isopref {

// The three economic utility families used as ground truths, each
// normalized to hit 1 at the top corner of the grid.
enum class UtilityFamily { linear, leontief, cobb_douglas };

std::string to_string(UtilityFamily family);
UtilityFamily utility_family_from_string(const std::string& name);

struct UtilitySpec {
  UtilityFamily family = UtilityFamily::linear;
  std::vector<double> a;  // strictly positive weights
  LatticeSpec spec;

  void validate() const;
};

// linear:       sum_i a_i x_i / (m |a|_1)
// leontief:     min_i a_i x_i / (m min_i a_i)
// cobb_douglas: prod_i x_i^{a_i} / m^{|a|_1}
double utility_eval(const UtilitySpec& u, const CriteriaVector& x);

// Criteria drawn uniformly from the grid, targets utility plus N(0, sigma^2)
// noise, left unclamped. The generating truth is retained for estimation
// error.
struct SyntheticSample {
  Dataset data;
  UtilitySpec truth;
};
SyntheticSample sample_dataset(const UtilitySpec& u, int n, double sigma,
                               std::uint64_t seed);

struct ExperimentConfig {
  int d = 2;
  int m = 5;
  double sigma = 0.2;
  std::vector<int> sample_sizes;
  int trials = 50;
  std::uint64_t seed = 0;
  LambdaGrid grid = LambdaGrid::default_grid();
  int threads = 1;

  void validate() const;
};

// One aggregated table row: mean estimation error and its standard error
// for one method at one sample size.
struct ExperimentRow {
  UtilityFamily family;
  int n = 0;
  std::string method;  // "nnls" or "cv"
  double mean_error = 0.0;
  double se = 0.0;
  int trials = 0;
};

// Per trial: draw a ~ Uniform[1,2]^d, sample a dataset, fit the truncated
// non-negative least squares baseline and the cross-validated estimator on
// the same data, and score both against the retained truth under the
// uniform distribution. Trials run in parallel; per-trial seeds come from
// the master seed, so results are independent of thread count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          UtilityFamily family);

// CSV with header family,N,method,mean_error,se,trials.
void write_experiment_csv(std::ostream& os,
                          const std::vector<ExperimentRow>& rows);

}  // namespace isopref

#endif
