#include "isopref/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "isopref/parallel.hpp"

namespace isopref {

LambdaGrid LambdaGrid::default_grid() {
  LambdaGrid grid;
  grid.values.push_back(0.0);
  for (int k = -9; k <= 8; ++k) grid.values.push_back(std::ldexp(1.0, k));
  grid.values.push_back(std::numeric_limits<double>::infinity());
  return grid;
}

void LambdaGrid::validate() const {
  if (values.empty()) throw std::invalid_argument("lambda grid: empty");
  bool has_zero = false, has_inf = false;
  for (double v : values) {
    if (std::isnan(v) || v < 0.0)
      throw std::invalid_argument("lambda grid: values must be >= 0 or inf");
    if (v == 0.0) has_zero = true;
    if (std::isinf(v)) has_inf = true;
  }
  if (!has_zero || !has_inf)
    throw std::invalid_argument("lambda grid: must contain 0 and inf");
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds,
                                          std::uint64_t seed) {
  const std::size_t n = ds.size();
  if (n < 2) throw std::invalid_argument("split: need at least 2 records");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);

  const std::size_t n_train = (3 * n + 3) / 4;  // ceil(3N/4)
  std::vector<std::size_t> train(idx.begin(), idx.begin() + n_train);
  std::vector<std::size_t> val(idx.begin() + n_train, idx.end());
  std::sort(train.begin(), train.end());
  std::sort(val.begin(), val.end());

  Dataset s0{ds.spec, {}}, s1{ds.spec, {}};
  s0.records.reserve(train.size());
  s1.records.reserve(val.size());
  for (std::size_t i : train) s0.records.push_back(ds.records[i]);
  for (std::size_t i : val) s1.records.push_back(ds.records[i]);
  return {std::move(s0), std::move(s1)};
}

double validation_risk(const PreferenceModel& model, const Dataset& held_out) {
  if (held_out.records.empty())
    throw std::invalid_argument("validation_risk: empty held-out set");
  double risk = 0.0;
  for (const auto& rec : held_out.records) {
    const double r = model.evaluate(rec.x) - rec.y;
    risk += r * r;
  }
  return risk;
}

CvResult cross_validate(const Dataset& ds, const LambdaGrid& grid,
                        std::uint64_t seed, int threads, int folds) {
  grid.validate();
  if (folds < 1) throw std::invalid_argument("cross_validate: folds must be >= 1");
  std::vector<double> lambdas = grid.values;
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  // Fold splits. folds = 1 keeps the plain ceil(3N/4) hold-out; otherwise
  // the seeded shuffle deals records round-robin into K validation folds.
  std::vector<std::pair<Dataset, Dataset>> splits;
  if (folds == 1) {
    splits.push_back(split_dataset(ds, seed));
    if (splits[0].second.records.empty())
      throw std::invalid_argument(
          "cross_validate: validation split is empty (need N >= 4)");
  } else {
    const std::size_t n = ds.size();
    if (n < static_cast<std::size_t>(folds))
      throw std::invalid_argument("cross_validate: need at least one record per fold");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int f = 0; f < folds; ++f) {
      Dataset train{ds.spec, {}}, val{ds.spec, {}};
      for (std::size_t i = 0; i < n; ++i)
        (i % folds == static_cast<std::size_t>(f) ? val : train)
            .records.push_back(ds.records[idx[i]]);
      splits.emplace_back(std::move(train), std::move(val));
    }
  }

  std::vector<double> risks(lambdas.size(), 0.0);
  PreferenceModel first_fold_best;
  std::vector<PreferenceModel> first_fold_models(lambdas.size());
  for (std::size_t f = 0; f < splits.size(); ++f) {
    const DatasetSummary train_summary = summarize(splits[f].first);
    std::vector<double> fold_risks(lambdas.size());
    parallel_for(lambdas.size(), threads, [&](std::size_t i) {
      const RlsSolution sol = rls_solve(train_summary, lambdas[i]);
      PreferenceModel model = post_process(sol, train_summary);
      fold_risks[i] = validation_risk(model, splits[f].second);
      if (f == 0) first_fold_models[i] = std::move(model);
    });
    for (std::size_t i = 0; i < lambdas.size(); ++i) risks[i] += fold_risks[i];
  }

  // argmin in ascending lambda order; ties go to the larger lambda.
  std::size_t best = 0;
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (risks[i] <= risks[best]) best = i;

  CvResult result;
  result.split_seed = seed;
  result.chosen_lambda = lambdas[best];
  result.validation_risks.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    result.validation_risks.emplace_back(lambdas[i], risks[i]);
  result.pre_refit_model = std::move(first_fold_models[best]);

  const DatasetSummary full_summary = summarize(ds);
  result.final_model =
      post_process(rls_solve(full_summary, lambdas[best]), full_summary);
  return result;
}

}  // namespace isopref
