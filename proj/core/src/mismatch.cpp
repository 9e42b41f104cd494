#include "isopref/mismatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "isopref/isotonic.hpp"
#include "isopref/metrics.hpp"
#include "isopref/order.hpp"
#include "isopref/preference_model.hpp"
#include "isopref/rls.hpp"

namespace isopref {

CounterexampleMatrix build_B4() {
  CounterexampleMatrix b;
  b.m = 4;
  b.tag = "B4";
  const int raw[16] = {1, 2, 6, 12, 3, 5, 7, 12, 4, 8, 11, 12, 9, 10, 12, 12};
  b.entries.reserve(16);
  for (int v : raw) b.entries.push_back(v / 12.0);
  return b;
}

CounterexampleMatrix build_B3() {
  CounterexampleMatrix b;
  b.m = 3;
  b.tag = "B3";
  const int raw[9] = {1, 2, 6, 3, 5, 7, 4, 8, 9};
  b.entries.reserve(9);
  for (int v : raw) b.entries.push_back(v / 10.0);
  return b;
}

CounterexampleMatrix build_M_interactions(int m) {
  if (m < 4 || m % 4 != 0)
    throw std::invalid_argument("build_M_interactions: m must be a positive multiple of 4");
  const CounterexampleMatrix b4 = build_B4();
  CounterexampleMatrix M;
  M.m = m;
  M.tag = "M_interactions(" + std::to_string(m) + ")";
  M.entries.resize(static_cast<std::size_t>(m) * m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      M.entries[(i - 1) * m + (j - 1)] =
          b4.at((4 * i + m - 1) / m, (4 * j + m - 1) / m);
  return M;
}

CounterexampleMatrix build_M_ranking(int m) {
  if (m < 3 || m % 3 != 0)
    throw std::invalid_argument("build_M_ranking: m must be a positive multiple of 3");
  const CounterexampleMatrix b3 = build_B3();
  const int block = m / 3;
  CounterexampleMatrix M;
  M.m = m;
  M.tag = "M_ranking(" + std::to_string(m) + ")";
  M.entries.resize(static_cast<std::size_t>(m) * m);
  const double md = m;
  for (int i = 1; i <= m; ++i) {
    const int bi = (3 * i + m - 1) / m;
    const int hi = i - block * (bi - 1);  // index within the block, 1..m/3
    for (int j = 1; j <= m; ++j) {
      const int bj = (3 * j + m - 1) / m;
      const int hj = j - block * (bj - 1);
      M.entries[(i - 1) * m + (j - 1)] =
          b3.at(bi, bj) + hi / (10.0 * md) + hj / (10.0 * md * md);
    }
  }
  return M;
}

UniqueIsotonicTensor build_unique_tensor(const LatticeSpec& spec) {
  spec.validate();
  if (spec.lattice_size() > 1000000ull)
    throw std::invalid_argument("build_unique_tensor: grid too large");

  UniqueIsotonicTensor t;
  t.spec = spec;
  const std::vector<CriteriaVector> pts = lattice_points(spec);
  t.entries.resize(pts.size());
  const double norm = static_cast<double>(spec.d) *
                      static_cast<double>(spec.lattice_size());
  for (std::size_t r = 0; r < pts.size(); ++r) {
    double s = 0.0, coef = 1.0;
    for (int k = 0; k < spec.d; ++k) {
      s += coef * pts[r][k];
      coef *= spec.m;
    }
    t.entries[lattice_index(pts[r], spec)] = s / norm;
  }
  return t;
}

std::array<bool, 4> check_interaction_chains(const CounterexampleMatrix& M) {
  if (M.m != 4) throw std::invalid_argument("check_interaction_chains: need 4x4");
  auto chain = [&](int i1, int j1, int i2, int j2, int i3, int j3, int i4,
                   int j4) {
    return M.at(i1, j1) < M.at(i2, j2) && M.at(i2, j2) < M.at(i3, j3) &&
           M.at(i3, j3) < M.at(i4, j4);
  };
  return {chain(1, 2, 2, 1, 3, 1, 2, 2), chain(2, 2, 1, 3, 2, 3, 3, 2),
          chain(3, 1, 2, 2, 3, 2, 4, 1), chain(2, 3, 3, 2, 4, 2, 3, 3)};
}

namespace {

// Phase-1 simplex: is {x >= 0 : A x = b} nonempty? b must be nonnegative.
// Bland's rule on both choices, so it terminates despite degeneracy.
bool phase1_feasible(std::vector<std::vector<double>> A, std::vector<double> b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  constexpr double eps = 1e-9;

  // One artificial per row; objective = sum of artificials, expressed in
  // terms of the structural columns.
  std::vector<double> obj(cols, 0.0);
  double obj_val = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) obj[j] += A[i][j];
    obj_val += b[i];
  }
  std::vector<int> basis(rows);
  for (std::size_t i = 0; i < rows; ++i)
    basis[i] = static_cast<int>(cols + i);  // artificial ids

  for (;;) {
    int enter = -1;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] > eps) {
        enter = static_cast<int>(j);
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      if (A[i][enter] > eps) {
        const double ratio = b[i] / A[i][enter];
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             (leave < 0 || basis[i] < basis[leave])))
        {
          best_ratio = ratio;
          leave = static_cast<int>(i);
        }
      }
    }
    if (leave < 0) return false;  // unbounded improvement cannot happen here

    const double piv = A[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) A[leave][j] /= piv;
    b[leave] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(leave)) continue;
      const double f = A[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[leave][j];
      b[i] -= f * b[leave];
      if (b[i] < 0.0 && b[i] > -1e-11) b[i] = 0.0;
    }
    const double fo = obj[enter];
    for (std::size_t j = 0; j < cols; ++j) obj[j] -= fo * A[leave][j];
    obj_val -= fo * b[leave];
    basis[leave] = enter;
  }
  return obj_val <= 1e-7;
}

}  // namespace

bool additive_order_feasible(const std::vector<double>& entries, int rows,
                             int cols, double margin, double box) {
  if (rows < 1 || cols < 1 ||
      entries.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("additive_order_feasible: bad shape");
  {
    std::set<double> uniq(entries.begin(), entries.end());
    if (uniq.size() != entries.size())
      throw std::invalid_argument("additive_order_feasible: tied entries");
  }

  // Variables: a_i = a+_i - a-_i (rows), b_j likewise (cols); all parts in
  // [0, box]. For each ordered pair of cells p strictly below q:
  //   a_{qi} + b_{qj} - a_{pi} - b_{pj} - s = margin.
  const int nv = rows + cols;          // signed variables
  const int n_cells = rows * cols;
  const int n_pairs = n_cells * (n_cells - 1) / 2;
  const int n_struct = 2 * nv + n_pairs + 2 * nv;  // +/- parts, surplus, box slacks
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  A.reserve(n_pairs + 2 * nv);
  b.reserve(n_pairs + 2 * nv);

  auto var_plus = [&](int v) { return v; };
  auto var_minus = [&](int v) { return nv + v; };
  int surplus_base = 2 * nv;
  int slack_base = 2 * nv + n_pairs;

  int pair_idx = 0;
  for (int p = 0; p < n_cells; ++p) {
    for (int q = p + 1; q < n_cells; ++q) {
      int lo = p, hi = q;
      if (entries[lo] > entries[hi]) std::swap(lo, hi);
      const int li = lo / cols, lj = lo % cols;
      const int hi_i = hi / cols, hj = hi % cols;
      std::vector<double> row(n_struct, 0.0);
      auto add = [&](int v, double c) {
        row[var_plus(v)] += c;
        row[var_minus(v)] -= c;
      };
      add(hi_i, 1.0);
      add(rows + hj, 1.0);
      add(li, -1.0);
      add(rows + lj, -1.0);
      row[surplus_base + pair_idx] = -1.0;
      A.push_back(std::move(row));
      b.push_back(margin);
      ++pair_idx;
    }
  }
  for (int v = 0; v < 2 * nv; ++v) {  // each signed part bounded by box
    std::vector<double> row(n_struct, 0.0);
    row[v] = 1.0;
    row[slack_base + v] = 1.0;
    A.push_back(std::move(row));
    b.push_back(box);
  }
  return phase1_feasible(std::move(A), std::move(b));
}

bool gam_orderable(const CounterexampleMatrix& M, double margin) {
  if (M.m != 3) throw std::invalid_argument("gam_orderable: need 3x3");
  return additive_order_feasible(M.entries, 3, 3, margin);
}

std::pair<double, double> ols_2x2_closed_form(const Ols2x2Counts& counts,
                                              const Ols2x2Values& values) {
  if (counts.n00 < 0 || counts.n10 < 0 || counts.n01 < 0 || counts.n11 < 0)
    throw std::invalid_argument("ols_2x2: negative counts");
  const int positive =
      (counts.n11 > 0) + (counts.n01 > 0) + (counts.n10 > 0);
  if (positive < 2)
    throw std::invalid_argument(
        "ols_2x2: need at least two of N11, N01, N10 positive");

  const double N10 = static_cast<double>(counts.n10);
  const double N01 = static_cast<double>(counts.n01);
  const double N11 = static_cast<double>(counts.n11);
  const double t1 = N10 * values.a10 + N11 * values.a11;
  const double t2 = N01 * values.a01 + N11 * values.a11;
  const double denom = N11 * (N01 + N10) + N10 * N01;
  const double a1 = ((N01 + N11) * t1 - N11 * t2) / denom;
  const double a2 = (-N11 * t1 + (N11 + N10) * t2) / denom;
  return {a1, a2};
}

MismatchReportRow demo_bias(const CounterexampleMatrix& M) {
  LatticeSpec spec{2, M.m, 0.0, 1.0};
  spec.validate();

  const std::vector<CriteriaVector> pts = lattice_points(spec);
  std::vector<double> targets(pts.size());
  for (std::size_t r = 0; r < pts.size(); ++r)
    targets[r] = M.at(pts[r][0], pts[r][1]);

  const Dataset ds = make_unit_dataset(spec, pts, targets);
  const DatasetSummary summary = summarize(ds);

  MismatchReportRow row;
  row.construction = M.tag;
  row.m = M.m;

  const PreferenceModel nnls_model = post_process(
      rls_solve(summary, std::numeric_limits<double>::infinity()), summary);
  double mse = 0.0;
  for (std::size_t r = 0; r < pts.size(); ++r) {
    const double e = nnls_model.evaluate(pts[r]) - targets[r];
    mse += e * e;
  }
  row.nnls_mse = mse / static_cast<double>(pts.size());

  const OrderDag dag = lattice_covering_dag(spec);
  const IsotonicAssignment iso =
      isotonic_fit(dag, {targets, std::vector<double>(pts.size(), 1.0)});
  double iso_ss = 0.0;
  for (std::size_t r = 0; r < pts.size(); ++r) {
    const double e = iso[r] - targets[r];
    iso_ss += e * e;
  }
  row.iso_residual = iso_ss / static_cast<double>(pts.size());

  row.kendall_tau = kendall_tau_distance(
      [&](const CriteriaVector& x) { return nnls_model.evaluate(x); },
      [&](const CriteriaVector& x) { return M.at(x[0], x[1]); }, spec);
  return row;
}

void write_mismatch_csv(std::ostream& os,
                        const std::vector<MismatchReportRow>& rows) {
  os << "construction,m,nnls_mse,iso_residual,kendall_tau\n";
  os.precision(17);
  for (const auto& r : rows)
    os << r.construction << ',' << r.m << ',' << r.nnls_mse << ','
       << r.iso_residual << ',' << r.kendall_tau << '\n';
}

}  // namespace isopref
