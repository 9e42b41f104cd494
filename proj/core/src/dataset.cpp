#include "isopref/dataset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace isopref {

void Dataset::validate() const {
  spec.validate();
  if (records.empty()) throw std::invalid_argument("dataset: no records");
  for (const auto& r : records)
    if (!in_lattice(r.x, spec))
      throw std::invalid_argument("dataset: record off the criteria grid");
}

Dataset make_unit_dataset(const LatticeSpec& spec,
                          const std::vector<CriteriaVector>& xs,
                          const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("make_unit_dataset: size mismatch");
  if (spec.score_min != 0.0 || spec.score_max != 1.0)
    throw std::invalid_argument("make_unit_dataset: score range must be [0,1]");
  Dataset ds;
  ds.spec = spec;
  ds.records.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    ds.records.push_back({xs[i], ys[i], ys[i]});
  return ds;
}

DatasetSummary summarize(const Dataset& ds) {
  ds.validate();

  // Accumulate per distinct input. std::map keeps the lexicographic order
  // that build_covering_dag produces, so summaries align with dag.nodes.
  struct Acc {
    int count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::map<CriteriaVector, Acc> acc;
  for (const auto& r : ds.records) {
    Acc& a = acc[r.x];
    ++a.count;
    a.sum += r.y;
    a.sum_sq += r.y * r.y;
  }

  DatasetSummary s;
  s.spec = ds.spec;
  s.n_records = ds.records.size();
  s.points.reserve(acc.size());
  std::vector<CriteriaVector> pts;
  pts.reserve(acc.size());
  for (const auto& [x, a] : acc) {
    const double mean = a.sum / a.count;
    s.points.push_back({x, a.count, mean});
    s.within_ss += a.sum_sq - a.count * mean * mean;
    pts.push_back(x);
  }
  if (s.within_ss < 0.0) s.within_ss = 0.0;  // roundoff guard
  s.dag = build_covering_dag(std::move(pts));
  return s;
}

}  // namespace isopref
