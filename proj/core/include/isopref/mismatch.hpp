#ifndef ISOPREF_MISMATCH_HPP
#define ISOPREF_MISMATCH_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "isopref/lattice.hpp"

namespace isopref {

// Bivariate isotonic matrices that no additive or interaction model can
// reproduce. Stored row-major; entries in [0,1], non-decreasing along rows
// and columns.
struct CounterexampleMatrix {
  int m = 0;
  std::vector<double> entries;  // m*m, row-major
  std::string tag;              // B4, B3, M_interactions(m), M_ranking(m)

  double at(int i, int j) const { return entries[(i - 1) * m + (j - 1)]; }
};

// The 4x4 seed matrix with entries k/12; its strict entry chains defeat
// every interaction model.
CounterexampleMatrix build_B4();

// The 3x3 seed matrix with entries k/10; its entry order defeats every
// additive model.
CounterexampleMatrix build_B3();

// Block-constant expansion of B4 onto an m x m grid, m a multiple of 4:
// M_ij = B4(ceil(4i/m), ceil(4j/m)).
CounterexampleMatrix build_M_interactions(int m);

// Block expansion of B3 plus a within-block perturbation that makes all
// entries distinct, m a multiple of 3:
//   M_ij = B3(ceil(3i/m), ceil(3j/m)) + h(i)/(10m) + h(j)/(10 m^2)
// with h the index within the block.
CounterexampleMatrix build_M_ranking(int m);

// Isotonic tensor on [1,m]^d with pairwise distinct entries:
// (sum_k m^{k-1} i_k) / (d m^d).
struct UniqueIsotonicTensor {
  LatticeSpec spec;
  std::vector<double> entries;  // indexed by lattice_index

  double at(const CriteriaVector& x) const {
    return entries[lattice_index(x, spec)];
  }
};
UniqueIsotonicTensor build_unique_tensor(const LatticeSpec& spec);

// The four strict entry chains a 4x4 interaction-model matrix cannot satisfy
// simultaneously:
//   M12<M21<M31<M22, M22<M13<M23<M32, M31<M22<M32<M41, M23<M32<M42<M33.
std::array<bool, 4> check_interaction_chains(const CounterexampleMatrix& M);

// Whether the strict entry order of a 3x3 matrix is reproducible by an outer
// sum a_i + b_j. Decided by linear-program feasibility over the 36 pairwise
// order constraints with unit margin and box |a|,|b| <= 1e6; the margin is
// scale-free because any additive witness can be rescaled. Rejects ties.
bool gam_orderable(const CounterexampleMatrix& M, double margin = 1.0);

// LP feasibility core behind gam_orderable, usable for any rows x cols
// matrix of distinct entries.
bool additive_order_feasible(const std::vector<double>& entries, int rows,
                             int cols, double margin = 1.0,
                             double box = 1e6);

// Closed-form least squares a1 x1 + a2 x2 (no intercept) on {0,1}^2 counts:
//   a1 = [(N01+N11)(N10 a10 + N11 a11) - N11 (N01 a01 + N11 a11)] / Ntilde
//   a2 = [-N11 (N10 a10 + N11 a11) + (N11+N10)(N01 a01 + N11 a11)] / Ntilde
// with Ntilde = N11 (N01+N10) + N10 N01. Requires at least two of
// N11, N01, N10 positive so the system is nonsingular.
struct Ols2x2Counts {
  long long n00 = 0, n10 = 0, n01 = 0, n11 = 0;
};
struct Ols2x2Values {
  double a00 = 0.0, a10 = 0.0, a01 = 0.0, a11 = 0.0;
};
std::pair<double, double> ols_2x2_closed_form(const Ols2x2Counts& counts,
                                              const Ols2x2Values& values);

// Fits the truncated non-negative least squares baseline to a construction
// (noiseless, one record per grid point) and reports how badly it does:
// per-entry squared error, the residual of an exact isotonic fit (which is
// zero because the constructions are isotonic), and the tie-aware ranking
// distance between the fit and the construction.
struct MismatchReportRow {
  std::string construction;
  int m = 0;
  double nnls_mse = 0.0;
  double iso_residual = 0.0;
  double kendall_tau = 0.0;
};
MismatchReportRow demo_bias(const CounterexampleMatrix& M);

// CSV with header construction,m,nnls_mse,iso_residual,kendall_tau.
void write_mismatch_csv(std::ostream& os,
                        const std::vector<MismatchReportRow>& rows);

}  // namespace isopref

#endif
