#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "isopref/mismatch.hpp"
#include "isopref/order.hpp"

using namespace isopref;

namespace {

bool bivariate_isotonic(const CounterexampleMatrix& M) {
  for (int i = 1; i <= M.m; ++i)
    for (int j = 1; j <= M.m; ++j) {
      if (i < M.m && M.at(i, j) > M.at(i + 1, j)) return false;
      if (j < M.m && M.at(i, j) > M.at(i, j + 1)) return false;
    }
  return true;
}

// Independent 2-variable weighted least squares via the normal equations,
// model a1 x1 + a2 x2 with no intercept on {0,1}^2 count data.
std::pair<double, double> ols_2x2_numeric(const Ols2x2Counts& c,
                                          const Ols2x2Values& v) {
  const double g11 = static_cast<double>(c.n10 + c.n11);
  const double g22 = static_cast<double>(c.n01 + c.n11);
  const double g12 = static_cast<double>(c.n11);
  const double r1 = c.n10 * v.a10 + c.n11 * v.a11;
  const double r2 = c.n01 * v.a01 + c.n11 * v.a11;
  const double det = g11 * g22 - g12 * g12;
  return {(g22 * r1 - g12 * r2) / det, (-g12 * r1 + g11 * r2) / det};
}

}  // namespace

TEST_CASE("B4 entries and feasibility chains") {
  const CounterexampleMatrix b = build_B4();
  CHECK(b.at(1, 1) == doctest::Approx(1.0 / 12.0));
  CHECK(b.at(3, 2) == doctest::Approx(8.0 / 12.0));
  CHECK(b.at(4, 4) == doctest::Approx(1.0));
  CHECK(bivariate_isotonic(b));

  const auto chains = check_interaction_chains(b);
  for (bool ok : chains) CHECK(ok);

  CounterexampleMatrix flat = b;
  std::fill(flat.entries.begin(), flat.entries.end(), 0.5);
  for (bool ok : check_interaction_chains(flat)) CHECK_FALSE(ok);

  CounterexampleMatrix transposed = b;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      transposed.entries[(i - 1) * 4 + (j - 1)] = b.at(j, i);
  CHECK_FALSE(check_interaction_chains(transposed)[0]);
}

TEST_CASE("block expansion of B4") {
  const CounterexampleMatrix m4 = build_M_interactions(4);
  const CounterexampleMatrix b4 = build_B4();
  CHECK(m4.entries == b4.entries);

  const CounterexampleMatrix m8 = build_M_interactions(8);
  CHECK(m8.at(1, 5) == doctest::Approx(6.0 / 12.0));
  CHECK(bivariate_isotonic(m8));
  // Diagonal sub-grids on rows {i, i+4} x cols {j, j+4} land on a 2x2
  // sub-matrix of B4.
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const int r = (i + 1) / 2, c = (j + 1) / 2;
      CHECK(m8.at(i, j) == b4.at(r, c));
      CHECK(m8.at(i + 4, j) == b4.at(r + 2, c));
      CHECK(m8.at(i, j + 4) == b4.at(r, c + 2));
      CHECK(m8.at(i + 4, j + 4) == b4.at(r + 2, c + 2));
    }

  CHECK_THROWS_AS(build_M_interactions(6), std::invalid_argument);
  CHECK_THROWS_AS(build_M_interactions(0), std::invalid_argument);
}

TEST_CASE("ranking construction: perturbed blocks, distinct isotonic entries") {
  const CounterexampleMatrix m3 = build_M_ranking(3);
  CHECK(m3.at(1, 1) ==
        doctest::Approx(1.0 / 10.0 + 1.0 / 30.0 + 1.0 / 90.0).epsilon(1e-15));

  for (int m : {3, 6, 9}) {
    const CounterexampleMatrix M = build_M_ranking(m);
    CHECK(bivariate_isotonic(M));
    std::set<double> uniq(M.entries.begin(), M.entries.end());
    CHECK(uniq.size() == M.entries.size());
    CHECK(*uniq.begin() > 0.0);
    CHECK(*uniq.rbegin() < 1.0);
  }
  CHECK_THROWS_AS(build_M_ranking(5), std::invalid_argument);
}

TEST_CASE("unique isotonic tensor") {
  LatticeSpec small{2, 2, 0.0, 1.0};
  const UniqueIsotonicTensor t = build_unique_tensor(small);
  CHECK(t.at({1, 1}) == doctest::Approx(3.0 / 8.0));
  CHECK(t.at({2, 2}) == doctest::Approx(6.0 / 8.0));
  std::set<double> uniq(t.entries.begin(), t.entries.end());
  CHECK(uniq.size() == 4);

  LatticeSpec bigger{3, 4, 0.0, 1.0};
  const UniqueIsotonicTensor t3 = build_unique_tensor(bigger);
  std::set<double> uniq3(t3.entries.begin(), t3.entries.end());
  CHECK(uniq3.size() == t3.entries.size());
  const OrderDag dag = lattice_covering_dag(bigger);
  CHECK(is_isotonic(dag, t3.entries));
  for (double v : t3.entries) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("additive orderability: witnesses and refutations") {
  // Outer sum a=(0,1,2), b=(0,0.1,0.2): strictly additive by construction.
  CounterexampleMatrix additive;
  additive.m = 3;
  const double av[3] = {0.0, 1.0, 2.0}, bv[3] = {0.0, 0.1, 0.2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) additive.entries.push_back(av[i] + bv[j]);
  CHECK(gam_orderable(additive));

  CHECK_FALSE(gam_orderable(build_M_ranking(3)));
  CHECK_FALSE(gam_orderable(build_B3()));

  CounterexampleMatrix tied = additive;
  tied.entries[8] = tied.entries[0];
  CHECK_THROWS_AS(gam_orderable(tied), std::invalid_argument);
}

TEST_CASE("random additive matrices are always orderable") {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> pick(-5.0, 5.0);
  int done = 0;
  while (done < 100) {
    double av[3] = {pick(rng), pick(rng), pick(rng)};
    double bv[3] = {pick(rng), pick(rng), pick(rng)};
    CounterexampleMatrix M;
    M.m = 3;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M.entries.push_back(av[i] + bv[j]);
    std::set<double> uniq(M.entries.begin(), M.entries.end());
    if (uniq.size() != 9) continue;  // regenerate on accidental ties
    CHECK(gam_orderable(M));
    ++done;
  }
}

TEST_CASE("2x2 orders: additive exactly when gap signs are consistent") {
  // A 2x2 outer sum has constant row and column differences, so the order
  // is additive iff both row gaps share a sign and both column gaps share a
  // sign. Every principal 2x2 sub-order of an isotonic matrix satisfies
  // this, so the smallest non-additive order needs a 3x3.
  std::vector<double> vals{0.1, 0.2, 0.3, 0.4};
  std::sort(vals.begin(), vals.end());
  do {
    const bool row_ok = (vals[1] > vals[0]) == (vals[3] > vals[2]);
    const bool col_ok = (vals[2] > vals[0]) == (vals[3] > vals[1]);
    CHECK(additive_order_feasible(vals, 2, 2) == (row_ok && col_ok));
    if (vals[1] > vals[0] && vals[2] > vals[0] && vals[3] > vals[1] &&
        vals[3] > vals[2])  // bivariate isotonic arrangement
      CHECK(additive_order_feasible(vals, 2, 2));
  } while (std::next_permutation(vals.begin(), vals.end()));
}

TEST_CASE("closed-form 2x2 least squares") {
  // Sample imbalance flips the apparent importance of the criteria.
  const auto [a1, a2] =
      ols_2x2_closed_form({0, 1, 0, 1}, {0.0, 0.25, 0.0, 1.0});
  CHECK(a1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(a2 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(a1 < a2);

  // Fully symmetric data with balanced counts keeps them equal.
  const auto [s1, s2] = ols_2x2_closed_form({3, 2, 2, 1}, {0.0, 0.3, 0.3, 1.0});
  CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));

  CHECK_THROWS_AS(ols_2x2_closed_form({5, 1, 0, 0}, {0.0, 0.3, 0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("closed form matches the numeric solver on 500 instances") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> cnt(0, 20);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  int done = 0;
  while (done < 500) {
    Ols2x2Counts c{cnt(rng), cnt(rng), cnt(rng), cnt(rng)};
    if ((c.n11 > 0) + (c.n01 > 0) + (c.n10 > 0) < 2) continue;
    Ols2x2Values v{val(rng), val(rng), val(rng), val(rng)};
    const auto [a1, a2] = ols_2x2_closed_form(c, v);
    const auto [b1, b2] = ols_2x2_numeric(c, v);
    CHECK(a1 == doctest::Approx(b1).epsilon(1e-10));
    CHECK(a2 == doctest::Approx(b2).epsilon(1e-10));
    ++done;
  }
}

TEST_CASE("symmetric-function sign condition under sample imbalance") {
  std::mt19937_64 rng(31415);
  std::uniform_int_distribution<int> cnt(1, 25);
  std::uniform_real_distribution<double> alpha_pick(0.0, 0.4999);
  int done = 0;
  while (done < 100) {
    const int n01 = cnt(rng);
    const int n10 = n01 + cnt(rng);  // N10 > N01
    const int n11 = cnt(rng);
    const double alpha = alpha_pick(rng);
    const Ols2x2Counts c{cnt(rng), n10, n01, n11};
    const Ols2x2Values v{0.0, alpha, alpha, 1.0};
    const auto [a1, a2] = ols_2x2_closed_form(c, v);
    CHECK(a1 < a2);
    CHECK(n11 * (1.0 - 2.0 * alpha) * (n01 - n10) < 0.0);
    ++done;
  }
}

TEST_CASE("demo_bias: floor constants on both constructions") {
  for (int m : {4, 8}) {
    const MismatchReportRow row = demo_bias(build_M_interactions(m));
    CHECK(row.iso_residual <= 1e-12);
    CHECK(row.nnls_mse >= 5.43e-5);
    CHECK(row.m == m);
  }
  for (int m : {3, 6}) {
    const MismatchReportRow row = demo_bias(build_M_ranking(m));
    CHECK(row.iso_residual <= 1e-12);
    CHECK(row.kendall_tau >= 0.012);
  }
}
