#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "isopref/metrics.hpp"
#include "isopref/mismatch.hpp"
#include "isopref/synthetic.hpp"

using namespace isopref;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

PreferenceModel constant_model(const LatticeSpec& spec, double value) {
  RlsSolution sol;
  sol.lambda = kInf;
  sol.g = LinearModel{std::vector<double>(spec.d, 0.0), value};
  sol.f_values = {value};
  CriteriaVector origin(spec.d, 1);
  Dataset ds = make_unit_dataset(LatticeSpec{spec.d, spec.m, 0.0, 1.0},
                                 {origin}, {std::min(std::max(value, 0.0), 1.0)});
  return post_process(sol, summarize(ds));
}

PreferenceModel fit_model(const Dataset& ds, double lambda) {
  const DatasetSummary s = summarize(ds);
  return post_process(rls_solve(s, lambda), s);
}

Dataset synthetic(std::uint64_t seed, UtilityFamily family = UtilityFamily::leontief,
                  int n = 80, double sigma = 0.2) {
  return sample_dataset(
             UtilitySpec{family, {1.4, 1.2}, {2, 4, 0.0, 1.0}}, n, sigma, seed)
      .data;
}

}  // namespace

TEST_CASE("prediction error: zero, constant-vs-alternating, recompute") {
  LatticeSpec spec{2, 4, 0.0, 1.0};
  Dataset alternating = make_unit_dataset(
      spec, {{1, 2}, {2, 1}, {2, 3}, {3, 2}}, {0.0, 1.0, 0.0, 1.0});
  const PreferenceModel half = constant_model(spec, 0.5);
  auto [pe, se] = prediction_error(half, alternating);
  CHECK(pe == doctest::Approx(0.25));
  CHECK(se == doctest::Approx(0.0));

  const Dataset data = synthetic(51);
  const PreferenceModel model = fit_model(data, 0.25);
  auto [pe2, se2] = prediction_error(model, data);
  double direct = 0.0;
  std::vector<double> sq;
  for (const auto& rec : data.records) {
    const double r = model.evaluate(rec.x) - rec.y;
    sq.push_back(r * r);
    direct += r * r;
  }
  direct /= data.size();
  CHECK(pe2 == doctest::Approx(direct).epsilon(1e-12));
  double var = 0.0;
  for (double v : sq) var += (v - direct) * (v - direct);
  CHECK(se2 == doctest::Approx(std::sqrt(var / (sq.size() - 1)) /
                               std::sqrt(static_cast<double>(sq.size())))
                   .epsilon(1e-12));

  const Dataset self = synthetic(52, UtilityFamily::linear, 30, 0.0);
  const PreferenceModel exact = fit_model(self, kInf);
  CHECK(prediction_error(exact, self).first == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("irreducible error: interpolation, duplicates, forced pooling") {
  LatticeSpec spec{2, 4, 0.0, 1.0};
  Dataset clean = make_unit_dataset(spec, {{1, 1}, {2, 2}, {3, 3}}, {0.1, 0.5, 0.9});
  CHECK(irreducible_error(clean) == doctest::Approx(0.0));

  Dataset split_point = make_unit_dataset(spec, {{2, 2}, {2, 2}}, {0.0, 1.0});
  CHECK(irreducible_error(split_point) == doctest::Approx(0.25));

  Dataset reversed = make_unit_dataset(spec, {{1, 1}, {2, 2}}, {1.0, 0.0});
  CHECK(irreducible_error(reversed) == doctest::Approx(0.25));
}

TEST_CASE("irreducible error properties") {
  std::mt19937_64 rng(606);
  for (int rep = 0; rep < 20; ++rep) {
    Dataset ds = synthetic(900 + rep, UtilityFamily::cobb_douglas, 40);
    const double base = irreducible_error(ds);
    std::shuffle(ds.records.begin(), ds.records.end(), rng);
    CHECK(irreducible_error(ds) == doctest::Approx(base).epsilon(1e-12));

    double mean = 0.0;
    for (const auto& rec : ds.records) mean += rec.y;
    mean /= ds.size();
    double var = 0.0;
    for (const auto& rec : ds.records) var += (rec.y - mean) * (rec.y - mean);
    var /= ds.size();  // population variance: the constant-fit residual
    CHECK(base <= var + 1e-12);
  }
}

TEST_CASE("reducible error closes on the test-set minimizer") {
  for (int rep = 0; rep < 5; ++rep) {
    const Dataset test = synthetic(333 + rep);
    const PreferenceModel own_fit = fit_model(test, 0.0);
    const MetricReport rep_own = metric_report(own_fit, test);
    CHECK(rep_own.reducible_error == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep_own.reducible_error ==
          doctest::Approx(rep_own.prediction_error - rep_own.irreducible_error)
              .epsilon(1e-12));
    const auto [red, red_se] = reducible_error(own_fit, test);
    CHECK(red == doctest::Approx(rep_own.reducible_error).epsilon(1e-12));
    CHECK(red_se == doctest::Approx(rep_own.prediction_error_se).epsilon(1e-12));
  }

  LatticeSpec spec{2, 4, 0.0, 1.0};
  Dataset alternating = make_unit_dataset(
      spec, {{1, 4}, {2, 3}, {3, 2}, {4, 1}}, {0.25, 0.75, 0.25, 0.75});
  const PreferenceModel half = constant_model(spec, 0.5);
  const MetricReport r = metric_report(half, alternating);
  CHECK(r.prediction_error == doctest::Approx(0.0625));
  CHECK(r.irreducible_error == doctest::Approx(0.0));  // antichain, any values fit
  CHECK(r.reducible_error == doctest::Approx(0.0625));
}

TEST_CASE("estimation error: identity, maximal gap, Monte Carlo") {
  LatticeSpec spec{2, 4, 0.0, 1.0};
  const PreferenceModel ones = constant_model(spec, 1.0);
  const PreferenceModel zeros = constant_model(spec, 0.0);
  const EmpiricalDistribution uniform = EmpiricalDistribution::uniform(spec);
  auto zero_fn = [](const CriteriaVector&) { return 0.0; };
  CHECK(estimation_error(zeros, zero_fn, uniform) == doctest::Approx(0.0));
  CHECK(estimation_error(ones, zero_fn, uniform) == doctest::Approx(1.0));

  const PreferenceModel model = fit_model(synthetic(8), 0.5);
  UtilitySpec truth{UtilityFamily::leontief, {1.4, 1.2}, spec};
  auto truth_fn = [&](const CriteriaVector& x) { return utility_eval(truth, x); };
  const double exact = estimation_error(model, truth_fn, uniform);

  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> level(1, 4);
  const int draws = 1000000;
  double mc = 0.0, mc_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    CriteriaVector x{level(rng), level(rng)};
    const double g = truth_fn(x) - model.evaluate(x);
    mc += g * g;
    mc_sq += g * g * g * g;
  }
  mc /= draws;
  const double mc_se = std::sqrt((mc_sq / draws - mc * mc) / draws);
  CHECK(std::abs(exact - mc) <= 3.0 * mc_se + 1e-12);
}

TEST_CASE("preference misalignment: identity, gap, recompute, symmetry") {
  LatticeSpec spec{2, 4, 0.0, 1.0};
  const EmpiricalDistribution uniform = EmpiricalDistribution::uniform(spec);
  const PreferenceModel a = fit_model(synthetic(61), 0.5);
  const PreferenceModel b = fit_model(synthetic(62), 2.0);

  CHECK(preference_misalignment(a, a, uniform).value == doctest::Approx(0.0));
  CHECK(preference_misalignment(constant_model(spec, 0.0),
                                constant_model(spec, 1.0), uniform)
            .value == doctest::Approx(1.0));

  const Dataset test = synthetic(63, UtilityFamily::linear, 60);
  const EmpiricalDistribution emp = EmpiricalDistribution::from_dataset(test);
  const Misalignment ab = preference_misalignment(a, b, emp);
  const Misalignment ba = preference_misalignment(b, a, emp);
  CHECK(ab.value == doctest::Approx(ba.value).epsilon(1e-12));
  REQUIRE(ab.se.has_value());

  double direct = 0.0;
  for (const auto& rec : test.records) {
    const double g = a.evaluate(rec.x) - b.evaluate(rec.x);
    direct += g * g;
  }
  direct /= test.size();
  CHECK(ab.value == doctest::Approx(direct).epsilon(1e-12));

  PreferenceModel other = a;
  other.spec.m = 5;
  CHECK_THROWS_AS(preference_misalignment(a, other, uniform),
                  std::invalid_argument);

  // Agreement with estimation error when the "truth" is the other model.
  auto b_fn = [&](const CriteriaVector& x) { return b.evaluate(x); };
  CHECK(estimation_error(a, b_fn, uniform) ==
        doctest::Approx(preference_misalignment(a, b, uniform).value)
            .epsilon(1e-12));
}

TEST_CASE("kendall tau: strict agreement, constant estimate, transforms") {
  LatticeSpec spec{2, 3, 0.0, 1.0};
  const UniqueIsotonicTensor t = build_unique_tensor(spec);
  auto injective = [&](const CriteriaVector& x) { return t.at(x); };
  auto constant = [](const CriteriaVector&) { return 0.25; };

  CHECK(kendall_tau_distance(injective, injective, spec) == doctest::Approx(0.0));
  CHECK(kendall_tau_distance(constant, injective, spec) == doctest::Approx(0.5));
  // constant reference: nothing is ranked in f, so no penalty at all
  CHECK(kendall_tau_distance(injective, constant, spec) == doctest::Approx(0.0));

  auto warped_a = [&](const CriteriaVector& x) { return std::exp(3.0 * t.at(x)); };
  const PreferenceModel m = fit_model(synthetic(77), kInf);
  auto fit_fn = [&](const CriteriaVector& x) { return m.evaluate(x); };
  auto warped_fit = [&](const CriteriaVector& x) {
    return std::atan(5.0 * m.evaluate(x));
  };
  LatticeSpec spec4{2, 4, 0.0, 1.0};
  CHECK(kendall_tau_distance(fit_fn, injective, spec) ==
        doctest::Approx(kendall_tau_distance(warped_fit, warped_a, spec)));
  CHECK(kendall_tau_distance(fit_fn, fit_fn, spec4) == doctest::Approx(0.0));
}

TEST_CASE("kendall tau matches a brute-force recount on the ranking matrix") {
  const CounterexampleMatrix M = build_M_ranking(3);
  LatticeSpec spec{2, 3, 0.0, 1.0};
  const std::vector<CriteriaVector> pts = lattice_points(spec);

  std::vector<double> targets;
  for (const auto& p : pts) targets.push_back(M.at(p[0], p[1]));
  const Dataset ds = make_unit_dataset(spec, pts, targets);
  const PreferenceModel nnls = fit_model(ds, kInf);

  auto fa = [&](const CriteriaVector& x) { return nnls.evaluate(x); };
  auto fb = [&](const CriteriaVector& x) { return M.at(x[0], x[1]); };
  const double dist = kendall_tau_distance(fa, fb, spec);

  double acc = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double ai = fa(pts[i]), aj = fa(pts[j]);
      const double bi = fb(pts[i]), bj = fb(pts[j]);
      if (ai == aj && bi != bj)
        acc += 0.5;
      else if ((ai < aj && bi > bj) || (ai > aj && bi < bj))
        acc += 1.0;
      ++pairs;
    }
  }
  CHECK(dist == doctest::Approx(acc / pairs).epsilon(1e-15));
  CHECK(dist >= 2.0 / 162.0 - 1e-12);
}

TEST_CASE("kendall tau size cap and sampled fallback") {
  LatticeSpec big{21, 2, 0.0, 1.0};  // 2^21 > 10^6 points
  auto constant = [](const CriteriaVector&) { return 0.25; };
  auto binary_code = [](const CriteriaVector& x) {  // injective on {1,2}^21
    double s = 0.0, coef = 1.0;
    for (int v : x) {
      s += coef * v;
      coef *= 2.0;
    }
    return s;
  };
  CHECK_THROWS_AS(kendall_tau_distance(constant, binary_code, big),
                  std::invalid_argument);
  const auto [est, se] = kendall_tau_sampled(constant, binary_code, big, 4000, 9);
  CHECK(est == doctest::Approx(0.5));  // every sampled pair is a half-penalty tie
  CHECK(se == doctest::Approx(0.0));
  const auto [est2, se2] =
      kendall_tau_sampled(binary_code, binary_code, big, 4000, 10);
  CHECK(est2 == doctest::Approx(0.0));  // identical strict rankings
}

TEST_CASE("bootstrap percentile interval") {
  const Dataset ds = synthetic(404, UtilityFamily::linear, 40);
  auto count_stat = [](const Dataset& d) {
    return static_cast<double>(d.size());
  };
  const auto [clo, chi] = bootstrap_ci(count_stat, ds, 200, 5);
  CHECK(clo == doctest::Approx(40.0));
  CHECK(chi == doctest::Approx(40.0));

  LatticeSpec spec{2, 4, 0.0, 1.0};
  Dataset degenerate = make_unit_dataset(
      spec, std::vector<CriteriaVector>(6, {2, 2}), std::vector<double>(6, 0.4));
  const auto [ilo, ihi] =
      bootstrap_ci([](const Dataset& d) { return irreducible_error(d); },
                   degenerate, 100, 11);
  CHECK(ilo == doctest::Approx(0.0));
  CHECK(ihi == doctest::Approx(0.0));

  auto stat = [](const Dataset& d) { return irreducible_error(d); };
  const auto [lo1, hi1] = bootstrap_ci(stat, ds, 300, 77);
  const auto [lo2, hi2] = bootstrap_ci(stat, ds, 300, 77);
  CHECK(lo1 == lo2);
  CHECK(hi1 == hi2);
  CHECK(lo1 <= hi1);
}

TEST_CASE("criteria effect curve: formula, monotonicity, missing halfwidth") {
  MetricReport rep;
  rep.prediction_error_se = 0.004;
  rep.reducible_error = 0.013;

  const Dataset data = synthetic(21, UtilityFamily::cobb_douglas, 100);
  const PreferenceModel model = fit_model(data, 0.25);
  const auto curve = criteria_effect_curve(model, 0, {2}, rep);
  REQUIRE(curve.size() == 4);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].level == static_cast<int>(i) + 1);
    REQUIRE(curve[i].halfwidth.has_value());
    CHECK(*curve[i].halfwidth == doctest::Approx(0.0344).epsilon(2e-3));
    if (i > 0) CHECK(curve[i].value >= curve[i - 1].value - 1e-12);
  }

  const PreferenceModel flat = constant_model(LatticeSpec{2, 4, 0.0, 1.0}, 0.3);
  const auto flat_curve = criteria_effect_curve(flat, 1, {3}, rep);
  for (const auto& pt : flat_curve) CHECK(pt.value == doctest::Approx(0.3));

  MetricReport bad;
  bad.reducible_error = -0.001;
  const auto no_bars = criteria_effect_curve(model, 0, {2}, bad);
  for (const auto& pt : no_bars) CHECK_FALSE(pt.halfwidth.has_value());
}
