#include "isopref/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace isopref {

using nlohmann::json;

void IngestConfig::validate() const {
  if (criteria_columns.empty())
    throw std::invalid_argument("ingest config: need at least one criteria column");
  if (score_column.empty())
    throw std::invalid_argument("ingest config: missing score column");
  if (m < 2) throw std::invalid_argument("ingest config: m must be >= 2");
  if (!(score_min < score_max))
    throw std::invalid_argument("ingest config: bad score range");
}

IngestConfig IngestConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;

  IngestConfig cfg;
  cfg.criteria_columns = j.at("criteria_columns").get<std::vector<std::string>>();
  cfg.score_column = j.at("score_column").get<std::string>();
  cfg.m = j.at("m").get<int>();
  cfg.score_min = j.at("score_min").get<double>();
  cfg.score_max = j.at("score_max").get<double>();
  if (j.contains("delimiter")) {
    const std::string d = j.at("delimiter").get<std::string>();
    if (d.size() != 1)
      throw std::runtime_error("config: delimiter must be a single character");
    cfg.delimiter = d[0];
  }
  cfg.validate();
  return cfg;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, int& out) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) return false;
    out = v;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) return false;
    out = v;
    return true;
  } catch (...) {
    return false;
  }
}

struct ColumnMap {
  std::vector<std::size_t> criteria;
  std::size_t score = 0;
  bool has_score = false;
};

ColumnMap map_columns(const std::vector<std::string>& header,
                      const IngestConfig& cfg, bool need_score) {
  ColumnMap map;
  auto find = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name) return i;
    throw std::runtime_error("unknown column: " + name);
  };
  for (const auto& c : cfg.criteria_columns) map.criteria.push_back(find(c));
  if (need_score) {
    map.score = find(cfg.score_column);
    map.has_score = true;
  }
  return map;
}

// Shared row walk for labeled and unlabeled files.
template <typename OnRow>
std::vector<RejectedRow> walk_csv(const std::string& path,
                                  const IngestConfig& cfg, bool need_score,
                                  const OnRow& on_row) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  const ColumnMap map = map_columns(split_line(line, cfg.delimiter), cfg, need_score);

  std::vector<RejectedRow> rejected;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line, cfg.delimiter);

    std::string reason;
    CriteriaVector x;
    x.reserve(map.criteria.size());
    for (std::size_t k = 0; k < map.criteria.size() && reason.empty(); ++k) {
      if (map.criteria[k] >= fields.size()) {
        reason = "missing value in column " + cfg.criteria_columns[k];
        break;
      }
      const std::string f = trim(fields[map.criteria[k]]);
      int v = 0;
      if (f.empty())
        reason = "missing value in column " + cfg.criteria_columns[k];
      else if (!parse_int(f, v))
        reason = "non-integer criterion in column " + cfg.criteria_columns[k];
      else if (v < 1 || v > cfg.m)
        reason = "criterion out of range [1," + std::to_string(cfg.m) +
                 "] in column " + cfg.criteria_columns[k];
      else
        x.push_back(v);
    }
    double y_raw = 0.0;
    if (reason.empty() && need_score) {
      if (map.score >= fields.size())
        reason = "missing value in column " + cfg.score_column;
      else {
        const std::string f = trim(fields[map.score]);
        if (f.empty())
          reason = "missing value in column " + cfg.score_column;
        else if (!parse_double(f, y_raw))
          reason = "non-numeric score";
        else if (y_raw < cfg.score_min || y_raw > cfg.score_max)
          reason = "score out of range";
      }
    }
    if (!reason.empty()) {
      rejected.push_back({line_no, reason});
      continue;
    }
    on_row(x, y_raw);
  }
  return rejected;
}

}  // namespace

IngestResult ingest_csv(const std::string& path, const IngestConfig& cfg) {
  cfg.validate();
  IngestResult out;
  out.data.spec = LatticeSpec{static_cast<int>(cfg.criteria_columns.size()),
                              cfg.m, cfg.score_min, cfg.score_max};
  out.data.spec.validate();
  out.rejected = walk_csv(path, cfg, true, [&](const CriteriaVector& x, double y_raw) {
    out.data.records.push_back({x, y_raw, rescale_score(y_raw, out.data.spec)});
  });
  if (out.data.records.empty()) throw std::runtime_error("no valid records");
  return out;
}

PointsResult ingest_points_csv(const std::string& path, const IngestConfig& cfg) {
  cfg.validate();
  PointsResult out;
  out.spec = LatticeSpec{static_cast<int>(cfg.criteria_columns.size()), cfg.m,
                         cfg.score_min, cfg.score_max};
  out.spec.validate();
  out.rejected = walk_csv(path, cfg, false, [&](const CriteriaVector& x, double) {
    out.points.push_back(x);
  });
  if (out.points.empty()) throw std::runtime_error("no valid records");
  return out;
}

std::string serialize_model(const PreferenceModel& model) {
  json j;
  j["format_version"] = 1;
  j["lattice"] = {{"d", model.spec.d},
                  {"m", model.spec.m},
                  {"score_min", model.spec.score_min},
                  {"score_max", model.spec.score_max}};
  j["mode"] = model.mode == PreferenceModel::Mode::interpolate
                  ? "interpolate"
                  : "linear_extrapolate";
  if (model.g) {
    j["linear"] = {{"slopes", model.g->slopes},
                   {"intercept", model.g->intercept}};
  }
  j["trained"] = {{"points", model.points}, {"values", model.values}};
  return j.dump(2);
}

PreferenceModel deserialize_model(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format_version").get<int>() != 1)
    throw std::runtime_error("model file: unsupported format version");

  PreferenceModel model;
  const json& lat = j.at("lattice");
  model.spec = LatticeSpec{lat.at("d").get<int>(), lat.at("m").get<int>(),
                           lat.at("score_min").get<double>(),
                           lat.at("score_max").get<double>()};
  model.spec.validate();

  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "interpolate") {
    model.mode = PreferenceModel::Mode::interpolate;
  } else if (mode == "linear_extrapolate") {
    model.mode = PreferenceModel::Mode::linear_extrapolate;
  } else {
    throw std::runtime_error("model file: unknown mode " + mode);
  }
  if (model.mode == PreferenceModel::Mode::linear_extrapolate) {
    LinearModel g;
    g.slopes = j.at("linear").at("slopes").get<std::vector<double>>();
    g.intercept = j.at("linear").at("intercept").get<double>();
    if (static_cast<int>(g.slopes.size()) != model.spec.d)
      throw std::runtime_error("model file: slope dimension mismatch");
    model.g = std::move(g);
  }

  model.points = j.at("trained").at("points").get<std::vector<CriteriaVector>>();
  model.values = j.at("trained").at("values").get<std::vector<double>>();
  if (model.points.size() != model.values.size() || model.points.empty())
    throw std::runtime_error("model file: malformed trained table");
  for (const auto& p : model.points)
    if (!in_lattice(p, model.spec))
      throw std::runtime_error("model file: trained point off the grid");
  if (!std::is_sorted(model.points.begin(), model.points.end()))
    throw std::runtime_error("model file: trained points must be sorted");

  const auto [lo, hi] =
      std::minmax_element(model.values.begin(), model.values.end());
  if (*lo < 0.0 || *hi > 1.0)
    throw std::runtime_error("model file: trained values outside [0,1]");
  model.trained_min = *lo;
  model.trained_max = *hi;
  return model;
}

void save_model(const PreferenceModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << serialize_model(model) << '\n';
}

PreferenceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace isopref
