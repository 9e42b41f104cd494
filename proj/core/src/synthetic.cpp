#include "isopref/synthetic.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "isopref/metrics.hpp"
#include "isopref/parallel.hpp"
#include "isopref/rng.hpp"

namespace isopref {

std::string to_string(UtilityFamily family) {
  switch (family) {
    case UtilityFamily::linear: return "linear";
    case UtilityFamily::leontief: return "leontief";
    case UtilityFamily::cobb_douglas: return "cobb_douglas";
  }
  return "unknown";
}

UtilityFamily utility_family_from_string(const std::string& name) {
  if (name == "linear") return UtilityFamily::linear;
  if (name == "leontief") return UtilityFamily::leontief;
  if (name == "cobb_douglas") return UtilityFamily::cobb_douglas;
  throw std::invalid_argument("unknown utility family: " + name);
}

void UtilitySpec::validate() const {
  spec.validate();
  if (static_cast<int>(a.size()) != spec.d)
    throw std::invalid_argument("utility: weight dimension mismatch");
  for (double w : a)
    if (!(w > 0.0)) throw std::invalid_argument("utility: weights must be > 0");
}

double utility_eval(const UtilitySpec& u, const CriteriaVector& x) {
  if (x.size() != u.a.size())
    throw std::invalid_argument("utility_eval: dimension mismatch");
  const double m = static_cast<double>(u.spec.m);
  // The normalized families live in [0,1]; the clamp only absorbs roundoff
  // spill at the top corner.
  const auto unit = [](double v) { return std::min(std::max(v, 0.0), 1.0); };
  switch (u.family) {
    case UtilityFamily::linear: {
      double s = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < u.a.size(); ++i) {
        s += u.a[i] * x[i];
        norm += u.a[i];
      }
      return unit(s / (m * norm));
    }
    case UtilityFamily::leontief: {
      double lo = u.a[0] * x[0], amin = u.a[0];
      for (std::size_t i = 1; i < u.a.size(); ++i) {
        lo = std::min(lo, u.a[i] * x[i]);
        amin = std::min(amin, u.a[i]);
      }
      return unit(lo / (m * amin));
    }
    case UtilityFamily::cobb_douglas: {
      double prod = 1.0, norm = 0.0;
      for (std::size_t i = 0; i < u.a.size(); ++i) {
        prod *= std::pow(static_cast<double>(x[i]), u.a[i]);
        norm += u.a[i];
      }
      return unit(prod / std::pow(m, norm));
    }
  }
  throw std::logic_error("utility_eval: unreachable");
}

SyntheticSample sample_dataset(const UtilitySpec& u, int n, double sigma,
                               std::uint64_t seed) {
  u.validate();
  if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
  if (sigma < 0.0) throw std::invalid_argument("sample_dataset: sigma < 0");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(1, u.spec.m);
  std::normal_distribution<double> noise(0.0, 1.0);

  SyntheticSample out;
  out.truth = u;
  out.data.spec = u.spec;
  out.data.spec.score_min = 0.0;
  out.data.spec.score_max = 1.0;
  out.data.records.reserve(n);
  for (int j = 0; j < n; ++j) {
    CriteriaVector x(u.spec.d);
    for (int k = 0; k < u.spec.d; ++k) x[k] = level(rng);
    const double y = utility_eval(u, x) + sigma * noise(rng);
    out.data.records.push_back({x, y, y});
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (sigma < 0.0) throw std::invalid_argument("experiment: sigma < 0");
  if (trials < 1) throw std::invalid_argument("experiment: trials < 1");
  if (sample_sizes.empty())
    throw std::invalid_argument("experiment: no sample sizes");
  for (int n : sample_sizes)
    if (n < 4) throw std::invalid_argument("experiment: sample sizes must be >= 4");
  grid.validate();
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          UtilityFamily family) {
  cfg.validate();
  LatticeSpec spec{cfg.d, cfg.m, 0.0, 1.0};
  spec.validate();
  const EmpiricalDistribution uniform = EmpiricalDistribution::uniform(spec);
  const std::uint64_t family_salt = static_cast<std::uint64_t>(family) + 101;

  const std::size_t n_sizes = cfg.sample_sizes.size();
  const std::size_t n_tasks = n_sizes * static_cast<std::size_t>(cfg.trials);
  std::vector<double> nnls_err(n_tasks), cv_err(n_tasks);

  parallel_for(n_tasks, cfg.threads, [&](std::size_t task) {
    const std::size_t size_idx = task / cfg.trials;
    const std::size_t trial = task % cfg.trials;
    const int n = cfg.sample_sizes[size_idx];
    const std::uint64_t trial_seed =
        derive_seed(cfg.seed, family_salt, size_idx * 1000003ull + trial);

    std::mt19937_64 rng(trial_seed);
    std::uniform_real_distribution<double> weight(1.0, 2.0);
    UtilitySpec truth;
    truth.family = family;
    truth.spec = spec;
    truth.a.resize(cfg.d);
    for (int k = 0; k < cfg.d; ++k) truth.a[k] = weight(rng);

    const SyntheticSample sample =
        sample_dataset(truth, n, cfg.sigma, derive_seed(trial_seed, 1));
    auto truth_fn = [&](const CriteriaVector& x) {
      return utility_eval(truth, x);
    };

    const DatasetSummary summary = summarize(sample.data);
    const PreferenceModel nnls_model = post_process(
        rls_solve(summary, std::numeric_limits<double>::infinity()), summary);
    nnls_err[task] = estimation_error(nnls_model, truth_fn, uniform);

    const CvResult cv =
        cross_validate(sample.data, cfg.grid, derive_seed(trial_seed, 2));
    cv_err[task] = estimation_error(cv.final_model, truth_fn, uniform);
  });

  std::vector<ExperimentRow> rows;
  rows.reserve(2 * n_sizes);
  auto aggregate = [&](const std::vector<double>& errs, std::size_t size_idx,
                       const std::string& method) {
    double mean = 0.0;
    for (int t = 0; t < cfg.trials; ++t) mean += errs[size_idx * cfg.trials + t];
    mean /= cfg.trials;
    double var = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const double dev = errs[size_idx * cfg.trials + t] - mean;
      var += dev * dev;
    }
    const double se = cfg.trials > 1
                          ? std::sqrt(var / (cfg.trials - 1)) / std::sqrt(cfg.trials)
                          : 0.0;
    rows.push_back({family, cfg.sample_sizes[size_idx], method, mean, se,
                    cfg.trials});
  };
  for (std::size_t s = 0; s < n_sizes; ++s) {
    aggregate(nnls_err, s, "nnls");
    aggregate(cv_err, s, "cv");
  }
  return rows;
}

void write_experiment_csv(std::ostream& os,
                          const std::vector<ExperimentRow>& rows) {
  os << "family,N,method,mean_error,se,trials\n";
  os.precision(17);
  for (const auto& r : rows)
    os << to_string(r.family) << ',' << r.n << ',' << r.method << ','
       << r.mean_error << ',' << r.se << ',' << r.trials << '\n';
}

}  // namespace isopref
