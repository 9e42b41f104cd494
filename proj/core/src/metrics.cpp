#include "isopref/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "isopref/isotonic.hpp"
#include "isopref/rng.hpp"

namespace isopref {

void EmpiricalDistribution::validate() const {
  if (support.size() != probabilities.size() || support.empty())
    throw std::invalid_argument("distribution: bad support");
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw std::invalid_argument("distribution: negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("distribution: probabilities must sum to 1");
}

EmpiricalDistribution EmpiricalDistribution::uniform(const LatticeSpec& spec) {
  EmpiricalDistribution p;
  p.support = lattice_points(spec);
  p.probabilities.assign(p.support.size(), 1.0 / p.support.size());
  return p;
}

EmpiricalDistribution EmpiricalDistribution::from_dataset(const Dataset& ds) {
  const DatasetSummary s = summarize(ds);
  EmpiricalDistribution p;
  p.support.reserve(s.points.size());
  p.probabilities.reserve(s.points.size());
  for (const auto& u : s.points) {
    p.support.push_back(u.point);
    p.probabilities.push_back(static_cast<double>(u.count) /
                              static_cast<double>(s.n_records));
  }
  p.n_samples = s.n_records;
  return p;
}

std::pair<double, double> prediction_error(const PreferenceModel& model,
                                           const Dataset& test) {
  if (test.records.empty())
    throw std::invalid_argument("prediction_error: empty test set");
  const std::size_t n = test.records.size();
  std::vector<double> sq(n);
  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = model.evaluate(test.records[j].x) - test.records[j].y;
    sq[j] = r * r;
    mean += sq[j];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : sq) var += (v - mean) * (v - mean);
  const double se =
      n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) / std::sqrt(n) : 0.0;
  return {mean, se};
}

double irreducible_error(const Dataset& ds) {
  const DatasetSummary s = summarize(ds);
  WeightedTargets wt;
  wt.targets.reserve(s.points.size());
  wt.weights.reserve(s.points.size());
  for (const auto& u : s.points) {
    wt.targets.push_back(u.mean_y);
    wt.weights.push_back(static_cast<double>(u.count));
  }
  const IsotonicAssignment fit = isotonic_fit(s.dag, wt);
  double ss = s.within_ss;
  for (std::size_t u = 0; u < fit.size(); ++u) {
    const double r = fit[u] - s.points[u].mean_y;
    ss += s.points[u].count * r * r;
  }
  return ss / static_cast<double>(s.n_records);
}

std::pair<double, double> reducible_error(const PreferenceModel& model,
                                          const Dataset& test) {
  const auto [pe, se] = prediction_error(model, test);
  return {pe - irreducible_error(test), se};
}

MetricReport metric_report(const PreferenceModel& model, const Dataset& test) {
  MetricReport rep;
  const auto [pe, se] = prediction_error(model, test);
  rep.prediction_error = pe;
  rep.prediction_error_se = se;
  rep.irreducible_error = irreducible_error(test);
  rep.reducible_error = rep.prediction_error - rep.irreducible_error;
  rep.reducible_error_se = se;
  rep.n_test = test.records.size();
  return rep;
}

double estimation_error(
    const PreferenceModel& model,
    const std::function<double(const CriteriaVector&)>& truth,
    const EmpiricalDistribution& p) {
  p.validate();
  double err = 0.0;
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    const double r = truth(p.support[i]) - model.evaluate(p.support[i]);
    err += p.probabilities[i] * r * r;
  }
  return err;
}

Misalignment preference_misalignment(const PreferenceModel& fa,
                                     const PreferenceModel& fb,
                                     const EmpiricalDistribution& p) {
  if (!fa.spec.same_grid(fb.spec))
    throw std::invalid_argument("misalignment: models on different grids");
  p.validate();
  const std::size_t k = p.support.size();
  std::vector<double> gap(k);
  double mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = fa.evaluate(p.support[i]) - fb.evaluate(p.support[i]);
    gap[i] = r * r;
    mean += p.probabilities[i] * gap[i];
  }
  Misalignment out;
  out.value = mean;
  if (p.n_samples && *p.n_samples > 1) {
    double var = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      var += p.probabilities[i] * (gap[i] - mean) * (gap[i] - mean);
    const double n = static_cast<double>(*p.n_samples);
    out.se = std::sqrt(var / (n - 1.0));
  }
  return out;
}

namespace {

// 1, 1/2 or 0 for one pair under the tie-aware rule; fa is the estimate.
double pair_penalty(double fa_x, double fa_y, double fb_x, double fb_y) {
  const int sa = fa_x < fa_y ? -1 : (fa_x > fa_y ? 1 : 0);
  const int sb = fb_x < fb_y ? -1 : (fb_x > fb_y ? 1 : 0);
  if (sa != 0 && sb != 0 && sa != sb) return 1.0;
  if (sa == 0 && sb != 0) return 0.5;
  return 0.0;
}

}  // namespace

double kendall_tau_distance(
    const std::function<double(const CriteriaVector&)>& fa,
    const std::function<double(const CriteriaVector&)>& fb,
    const LatticeSpec& spec) {
  spec.validate();
  const std::uint64_t n = spec.lattice_size();
  if (n > 1000000ull)
    throw std::invalid_argument(
        "kendall_tau_distance: grid too large for exact enumeration");

  const std::vector<CriteriaVector> pts = lattice_points(spec);
  std::vector<double> va(n), vb(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    va[i] = fa(pts[i]);
    vb[i] = fb(pts[i]);
  }
  double total = 0.0;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = i + 1; j < n; ++j)
      total += pair_penalty(va[i], va[j], vb[i], vb[j]);
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return total / pairs;
}

std::pair<double, double> kendall_tau_sampled(
    const std::function<double(const CriteriaVector&)>& fa,
    const std::function<double(const CriteriaVector&)>& fb,
    const LatticeSpec& spec, std::uint64_t n_pairs, std::uint64_t seed) {
  spec.validate();
  if (n_pairs < 2)
    throw std::invalid_argument("kendall_tau_sampled: need >= 2 pairs");
  const std::uint64_t n = spec.lattice_size();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  auto point_at = [&](std::uint64_t idx) {
    CriteriaVector x(spec.d);
    for (int k = spec.d - 1; k >= 0; --k) {
      x[k] = static_cast<int>(idx % spec.m) + 1;
      idx /= spec.m;
    }
    return x;
  };

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t s = 0; s < n_pairs; ++s) {
    std::uint64_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    const CriteriaVector xi = point_at(i), xj = point_at(j);
    const double k = pair_penalty(fa(xi), fa(xj), fb(xi), fb(xj));
    sum += k;
    sum_sq += k * k;
  }
  const double mean = sum / static_cast<double>(n_pairs);
  const double var =
      (sum_sq - n_pairs * mean * mean) / static_cast<double>(n_pairs - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(n_pairs))};
}

std::pair<double, double> bootstrap_ci(
    const std::function<double(const Dataset&)>& statistic, const Dataset& ds,
    int resamples, std::uint64_t seed) {
  if (resamples < 2)
    throw std::invalid_argument("bootstrap_ci: need >= 2 resamples");
  ds.validate();
  const std::size_t n = ds.records.size();

  std::vector<double> stats(resamples);
  for (int b = 0; b < resamples; ++b) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Dataset resample{ds.spec, {}};
    resample.records.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
      resample.records.push_back(ds.records[pick(rng)]);
    stats[b] = statistic(resample);
  }
  std::sort(stats.begin(), stats.end());

  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(stats.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, stats.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return stats[lo] + frac * (stats[hi] - stats[lo]);
  };
  return {quantile(0.025), quantile(0.975)};
}

std::vector<CurvePoint> criteria_effect_curve(const PreferenceModel& model,
                                              int vary_criterion,
                                              const CriteriaVector& fixed_levels,
                                              const MetricReport& report) {
  const LatticeSpec& spec = model.spec;
  if (vary_criterion < 0 || vary_criterion >= spec.d)
    throw std::invalid_argument("criteria_effect_curve: bad criterion index");
  if (static_cast<int>(fixed_levels.size()) != spec.d - 1)
    throw std::invalid_argument("criteria_effect_curve: need d-1 fixed levels");

  std::optional<double> halfwidth;
  if (report.reducible_error > 0.0)
    halfwidth = 1.96 * report.prediction_error_se /
                (2.0 * std::sqrt(report.reducible_error));

  std::vector<CurvePoint> curve;
  curve.reserve(spec.m);
  CriteriaVector x(spec.d);
  for (int level = 1; level <= spec.m; ++level) {
    int k = 0;
    for (int i = 0; i < spec.d; ++i)
      x[i] = (i == vary_criterion) ? level : fixed_levels[k++];
    curve.push_back({level, model.evaluate(x), halfwidth});
  }
  return curve;
}

}  // namespace isopref
