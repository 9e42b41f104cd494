#ifndef ISOPREF_LATTICE_HPP
#define ISOPREF_LATTICE_HPP

#include <cstdint>
#include <vector>

namespace isopref {

// A point on the criteria grid [1,m]^d, one integer score per criterion.
using CriteriaVector = std::vector<int>;

// Geometry of the criteria grid plus the raw range of the overall score.
struct LatticeSpec {
  int d = 0;               // number of criteria
  int m = 0;               // score levels per criterion, shared across criteria
  double score_min = 0.0;  // raw overall-score range
  double score_max = 1.0;

  // Throws std::invalid_argument unless d >= 1, m >= 2, score_min < score_max
  // and the lattice is enumerable without overflow (d*log2(m) <= 40).
  void validate() const;

  std::uint64_t lattice_size() const;  // m^d

  bool same_grid(const LatticeSpec& other) const {
    return d == other.d && m == other.m;
  }
};

enum class Ordering { equal, dominates, dominated, incomparable };

// Coordinate-wise dominance. `dominates` means a_i >= b_i for all i, a != b.
Ordering compare(const CriteriaVector& a, const CriteriaVector& b);

// True when x has exactly d coordinates, each in [1, m].
bool in_lattice(const CriteriaVector& x, const LatticeSpec& spec);

// Affine map from [score_min, score_max] onto [0,1] and back.
// rescale_score rejects raw values outside the range.
double rescale_score(double y_raw, const LatticeSpec& spec);
double unrescale_score(double y, const LatticeSpec& spec);

// All m^d lattice points in lexicographic order (last coordinate fastest).
std::vector<CriteriaVector> lattice_points(const LatticeSpec& spec);

// Lexicographic rank of a point among lattice_points(spec).
std::uint64_t lattice_index(const CriteriaVector& x, const LatticeSpec& spec);

}  // namespace isopref

#endif
