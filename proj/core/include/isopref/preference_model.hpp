#ifndef ISOPREF_PREFERENCE_MODEL_HPP
#define ISOPREF_PREFERENCE_MODEL_HPP

#include <optional>

#include "isopref/rls.hpp"

namespace isopref {

// A total, isotonic, [0,1]-valued preference function over the whole grid:
// truncated fitted values on the observed unique inputs, extended everywhere
// else either by order-interpolation (midpoint of the tightest observed
// bounds) or, for the pure linear fit, by truncated linear extrapolation.
struct PreferenceModel {
  enum class Mode { interpolate, linear_extrapolate };

  LatticeSpec spec;
  std::vector<CriteriaVector> points;  // observed unique inputs, sorted
  std::vector<double> values;          // truncated to [0,1], isotonic
  Mode mode = Mode::interpolate;
  std::optional<LinearModel> g;        // present iff linear_extrapolate
  double trained_min = 0.0;            // cached extremes of values
  double trained_max = 0.0;

  double evaluate(const CriteriaVector& x) const;
};

PreferenceModel post_process(const RlsSolution& sol, const DatasetSummary& s);
PreferenceModel post_process(const RlsSolution& sol, const Dataset& ds);

// evaluate() at every grid point, indexed by lattice_index. Computed by two
// sweeps over the grid instead of per-point scans; agrees exactly with
// pointwise evaluate().
std::vector<double> evaluate_lattice(const PreferenceModel& model);

}  // namespace isopref

#endif
