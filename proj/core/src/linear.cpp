#include "isopref/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isopref {

double LinearModel::operator()(const CriteriaVector& x) const {
  if (x.size() != slopes.size())
    throw std::invalid_argument("LinearModel: dimension mismatch");
  double v = intercept;
  for (std::size_t i = 0; i < slopes.size(); ++i) v += slopes[i] * x[i];
  return v;
}

namespace {

// Solves M z = rhs for symmetric positive semidefinite M. Rank-deficient
// columns are skipped and their variables pinned to zero; the normal system
// is always consistent so this still solves it exactly.
std::vector<double> solve_psd(std::vector<std::vector<double>> M,
                              std::vector<double> rhs) {
  const int k = static_cast<int>(rhs.size());
  double scale = 0.0;
  for (int i = 0; i < k; ++i) scale = std::max(scale, std::abs(M[i][i]));
  const double tol = 1e-12 * std::max(scale, 1.0);

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < k && row < k; ++col) {
    int best = row;
    for (int i = row + 1; i < k; ++i)
      if (std::abs(M[i][col]) > std::abs(M[best][col])) best = i;
    if (std::abs(M[best][col]) <= tol) continue;  // dependent column
    std::swap(M[best], M[row]);
    std::swap(rhs[best], rhs[row]);
    for (int i = row + 1; i < k; ++i) {
      const double f = M[i][col] / M[row][col];
      if (f == 0.0) continue;
      for (int j = col; j < k; ++j) M[i][j] -= f * M[row][j];
      rhs[i] -= f * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }

  std::vector<double> z(k, 0.0);
  for (int r = static_cast<int>(pivot_col.size()) - 1; r >= 0; --r) {
    const int col = pivot_col[r];
    double v = rhs[r];
    for (int j = col + 1; j < k; ++j) v -= M[r][j] * z[j];
    z[col] = v / M[r][col];
  }
  return z;
}

}  // namespace

LinearModel nnls_fit(const std::vector<CriteriaVector>& points,
                     const std::vector<double>& targets,
                     const std::vector<double>& weights) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("nnls_fit: no points");
  if (targets.size() != n) throw std::invalid_argument("nnls_fit: size mismatch");
  if (!weights.empty() && weights.size() != n)
    throw std::invalid_argument("nnls_fit: weight size mismatch");
  const int d = static_cast<int>(points[0].size());

  // Normal equations over [x; 1]; coordinate d is the intercept.
  std::vector<std::vector<double>> G(d + 1, std::vector<double>(d + 1, 0.0));
  std::vector<double> r(d + 1, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    if (static_cast<int>(points[u].size()) != d)
      throw std::invalid_argument("nnls_fit: ragged points");
    const double w = weights.empty() ? 1.0 : weights[u];
    std::vector<double> xt(d + 1, 1.0);
    for (int i = 0; i < d; ++i) xt[i] = points[u][i];
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) G[i][j] += w * xt[i] * xt[j];
      r[i] += w * targets[u] * xt[i];
    }
  }

  double r_scale = 1.0;
  for (int i = 0; i <= d; ++i) r_scale = std::max(r_scale, std::abs(r[i]));
  const double grad_tol = 1e-11 * r_scale;

  std::vector<char> passive(d, 0);
  std::vector<double> cur(d + 1, 0.0);
  cur[d] = G[d][d] > 0.0 ? r[d] / G[d][d] : 0.0;  // intercept-only start

  // Reduced solve on the passive slopes plus the intercept.
  auto solve_reduced = [&]() {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (passive[i]) idx.push_back(i);
    idx.push_back(d);
    const int k = static_cast<int>(idx.size());
    std::vector<std::vector<double>> Gs(k, std::vector<double>(k));
    std::vector<double> rs(k);
    for (int i = 0; i < k; ++i) {
      rs[i] = r[idx[i]];
      for (int j = 0; j < k; ++j) Gs[i][j] = G[idx[i]][idx[j]];
    }
    const std::vector<double> zs = solve_psd(std::move(Gs), std::move(rs));
    std::vector<double> z(d + 1, 0.0);
    for (int i = 0; i < k; ++i) z[idx[i]] = zs[i];
    return z;
  };

  const int max_outer = 30 * (d + 1);
  for (int outer = 0; outer < max_outer; ++outer) {
    // Negative gradient direction: w = r - G cur.
    int best = -1;
    double best_w = grad_tol;
    for (int i = 0; i < d; ++i) {
      if (passive[i]) continue;
      double wi = r[i];
      for (int j = 0; j <= d; ++j) wi -= G[i][j] * cur[j];
      if (wi > best_w) {
        best_w = wi;
        best = i;
      }
    }
    if (best < 0) break;  // KKT satisfied
    passive[best] = 1;

    for (int inner = 0; inner < max_outer; ++inner) {
      std::vector<double> z = solve_reduced();
      bool ok = true;
      for (int i = 0; i < d; ++i)
        if (passive[i] && z[i] <= 0.0) ok = false;
      if (ok) {
        cur = std::move(z);
        break;
      }
      // Step back along cur -> z until the first slope hits zero; drop it.
      double alpha = 1.0;
      for (int i = 0; i < d; ++i) {
        if (!passive[i] || z[i] > 0.0) continue;
        const double denom = cur[i] - z[i];
        alpha = std::min(alpha, denom > 0.0 ? cur[i] / denom : 0.0);
      }
      for (int i = 0; i <= d; ++i) cur[i] += alpha * (z[i] - cur[i]);
      for (int i = 0; i < d; ++i)
        if (passive[i] && cur[i] <= 1e-14 * r_scale) {
          passive[i] = 0;
          cur[i] = 0.0;
        }
    }
  }

  LinearModel model;
  model.slopes.assign(cur.begin(), cur.begin() + d);
  for (double& s : model.slopes) s = std::max(s, 0.0);
  model.intercept = cur[d];
  return model;
}

}  // namespace isopref
