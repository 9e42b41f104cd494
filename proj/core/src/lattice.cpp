#include "isopref/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isopref {

void LatticeSpec::validate() const {
  if (d < 1) throw std::invalid_argument("lattice: d must be >= 1");
  if (m < 2) throw std::invalid_argument("lattice: m must be >= 2");
  if (!(score_min < score_max))
    throw std::invalid_argument("lattice: score_min must be < score_max");
  if (static_cast<double>(d) * std::log2(static_cast<double>(m)) > 40.0)
    throw std::invalid_argument("lattice: m^d too large (d*log2(m) > 40)");
}

std::uint64_t LatticeSpec::lattice_size() const {
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(m);
  return n;
}

Ordering compare(const CriteriaVector& a, const CriteriaVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("compare: dimension mismatch");
  bool ge = true, le = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) ge = false;
    if (a[i] > b[i]) le = false;
  }
  if (ge && le) return Ordering::equal;
  if (ge) return Ordering::dominates;
  if (le) return Ordering::dominated;
  return Ordering::incomparable;
}

bool in_lattice(const CriteriaVector& x, const LatticeSpec& spec) {
  if (static_cast<int>(x.size()) != spec.d) return false;
  for (int c : x)
    if (c < 1 || c > spec.m) return false;
  return true;
}

double rescale_score(double y_raw, const LatticeSpec& spec) {
  if (!(y_raw >= spec.score_min && y_raw <= spec.score_max))
    throw std::invalid_argument("rescale: raw score " + std::to_string(y_raw) +
                                " outside [" + std::to_string(spec.score_min) +
                                ", " + std::to_string(spec.score_max) + "]");
  return (y_raw - spec.score_min) / (spec.score_max - spec.score_min);
}

double unrescale_score(double y, const LatticeSpec& spec) {
  return spec.score_min + y * (spec.score_max - spec.score_min);
}

std::vector<CriteriaVector> lattice_points(const LatticeSpec& spec) {
  spec.validate();
  std::vector<CriteriaVector> pts;
  pts.reserve(spec.lattice_size());
  CriteriaVector x(spec.d, 1);
  for (;;) {
    pts.push_back(x);
    int k = spec.d - 1;
    while (k >= 0 && x[k] == spec.m) {
      x[k] = 1;
      --k;
    }
    if (k < 0) break;
    ++x[k];
  }
  return pts;
}

std::uint64_t lattice_index(const CriteriaVector& x, const LatticeSpec& spec) {
  std::uint64_t idx = 0;
  for (int k = 0; k < spec.d; ++k)
    idx = idx * static_cast<std::uint64_t>(spec.m) +
          static_cast<std::uint64_t>(x[k] - 1);
  return idx;
}

}  // namespace isopref
