#ifndef ISOPREF_CROSS_VALIDATION_HPP
#define ISOPREF_CROSS_VALIDATION_HPP

#include <cstdint>
#include <utility>

#include "isopref/preference_model.hpp"

namespace isopref {

// Regularization weights to sweep. Must contain both endpoints: 0 (pure
// isotonic) and infinity (pure linear). Values are kept sorted and unique.
struct LambdaGrid {
  std::vector<double> values;

  // {2^k : -9 <= k <= 8} plus the two endpoints; 20 values.
  static LambdaGrid default_grid();
  void validate() const;
};

struct CvResult {
  double chosen_lambda = 0.0;
  std::vector<std::pair<double, double>> validation_risks;  // (lambda, risk)
  PreferenceModel final_model;      // refit on the full dataset
  PreferenceModel pre_refit_model;  // fit on the training split only
  std::uint64_t split_seed = 0;
};

// Seeded random partition into a training split of ceil(3N/4) records and
// its complement. Record order within each side follows the original
// dataset.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds,
                                          std::uint64_t seed);

// Sum of squared residuals of the model over a held-out dataset.
double validation_risk(const PreferenceModel& model, const Dataset& held_out);

// Picks lambda by validation risk and refits the winner on the full
// dataset. folds = 1 is the plain hold-out scheme: fit every lambda on a
// ceil(3N/4) training split and score on the complement. folds = K >= 2
// scores each lambda on K complementary validation folds instead (risks
// summed over folds, every record held out once); with the default K = 4
// each fit still trains on 3/4 of the data, but the selection is far less
// sensitive to a single unlucky split. Ties break toward the largest
// lambda, infinity greatest. The lambda loop may run on several threads;
// risks are reduced in grid order so the result does not depend on thread
// count.
CvResult cross_validate(const Dataset& ds, const LambdaGrid& grid,
                        std::uint64_t seed, int threads = 1, int folds = 4);

}  // namespace isopref

#endif
