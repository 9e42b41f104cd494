#ifndef ISOPREF_MODEL_IO_HPP
#define ISOPREF_MODEL_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "isopref/dataset.hpp"
#include "isopref/preference_model.hpp"

namespace isopref {

// Column layout and score geometry of an input CSV.
struct IngestConfig {
  std::vector<std::string> criteria_columns;  // ordered; defines d
  std::string score_column;
  int m = 0;
  double score_min = 0.0;
  double score_max = 0.0;
  char delimiter = ',';

  void validate() const;
  static IngestConfig from_json_file(const std::string& path);
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, counting the header line
  std::string reason;
};

struct IngestResult {
  Dataset data;
  std::vector<RejectedRow> rejected;
};

// Reads a delimited file with a header row. Rows with missing, non-integer
// or out-of-range criteria, or out-of-range scores, are itemized in the
// rejection report and skipped; accepted scores are rescaled to [0,1].
// Unknown columns and files with no valid records are fatal.
IngestResult ingest_csv(const std::string& path, const IngestConfig& cfg);

// Like ingest_csv but without the score column: criteria rows for predict.
struct PointsResult {
  LatticeSpec spec;  // score range copied from cfg
  std::vector<CriteriaVector> points;
  std::vector<RejectedRow> rejected;
};
PointsResult ingest_points_csv(const std::string& path, const IngestConfig& cfg);

// Versioned JSON document. Numbers round-trip exactly, so a deserialized
// model evaluates identically to the original at every grid point.
std::string serialize_model(const PreferenceModel& model);
PreferenceModel deserialize_model(const std::string& text);

void save_model(const PreferenceModel& model, const std::string& path);
PreferenceModel load_model(const std::string& path);

}  // namespace isopref

#endif
