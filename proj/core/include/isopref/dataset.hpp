#ifndef ISOPREF_DATASET_HPP
#define ISOPREF_DATASET_HPP

#include <cstddef>
#include <vector>

#include "isopref/lattice.hpp"
#include "isopref/order.hpp"

namespace isopref {

// One evaluation: criteria scores, the raw overall score, and its [0,1]
// rescaling. Synthetic data is generated directly on the model scale
// (score range [0,1], y == y_raw); such targets may fall outside [0,1]
// because additive noise is unbounded.
struct EvaluationRecord {
  CriteriaVector x;
  double y_raw = 0.0;
  double y = 0.0;
};

struct Dataset {
  LatticeSpec spec;
  std::vector<EvaluationRecord> records;

  std::size_t size() const { return records.size(); }

  // Throws unless the dataset is nonempty and every record lies on the grid.
  void validate() const;
};

// Convenience constructor for model-scale data: spec score range must be
// [0,1]; y_raw is set equal to y.
Dataset make_unit_dataset(const LatticeSpec& spec,
                          const std::vector<CriteriaVector>& xs,
                          const std::vector<double>& ys);

// Per distinct input: multiplicity and mean rescaled score.
struct UniquePointSummary {
  CriteriaVector point;
  int count = 0;
  double mean_y = 0.0;
};

// Deduplicated view of a dataset: unique inputs (sorted), their covering DAG,
// and the within-point sum of squares sum_u sum_{j in u} (y_j - mean_u)^2,
// which is the part of any squared-error objective no per-point fit can
// remove.
struct DatasetSummary {
  LatticeSpec spec;
  std::vector<UniquePointSummary> points;  // aligned with dag.nodes
  OrderDag dag;
  std::size_t n_records = 0;
  double within_ss = 0.0;
};

DatasetSummary summarize(const Dataset& ds);

}  // namespace isopref

#endif
