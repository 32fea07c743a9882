#include "dsdist/report_io.hpp"

#include "dsdist/embedding_io.hpp"
#include "dsdist/error.hpp"
#include "dsdist/file_util.hpp"
#include "dsdist/format.hpp"

#include <cmath>

namespace dsdist {

namespace {

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string optional_csv(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

namespace {

void write_json(const Json& node, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (node.type()) {
    case Json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = node.begin(); it != node.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        write_json(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : node) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_json(item, out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = node.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += node.dump();
  }
}

}  // namespace

std::string dump_json(const Json& doc) {
  std::string out;
  write_json(doc, out, 0);
  out += '\n';
  return out;
}

Json to_json(const DistanceReport& report, bool include_matrix) {
  Json doc;
  doc["primary_id"] = report.primary_id;
  doc["secondary_id"] = report.secondary_id;
  doc["n"] = report.primary_rows;
  doc["m"] = report.image_ids.size();
  doc["components"] = report.components;
  doc["o_dist"] = report.dataset_distance;
  Json images = Json::array();
  for (std::size_t j = 0; j < report.image_ids.size(); ++j) {
    Json entry;
    entry["image_id"] = report.image_ids[j];
    entry["value"] = report.image_distances[j];
    images.push_back(std::move(entry));
  }
  doc["i_dist"] = std::move(images);
  if (include_matrix) doc["matrix"] = matrix_json(report.matrix);
  return doc;
}

DistanceReport distance_report_from_json(const Json& doc) {
  try {
    DistanceReport report;
    report.primary_id = doc.at("primary_id").get<std::string>();
    report.secondary_id = doc.at("secondary_id").get<std::string>();
    report.primary_rows = doc.at("n").get<std::size_t>();
    report.components = doc.at("components").get<std::size_t>();
    report.dataset_distance = doc.at("o_dist").get<double>();
    for (const auto& entry : doc.at("i_dist")) {
      report.image_ids.push_back(entry.at("image_id").get<std::string>());
      report.image_distances.push_back(entry.at("value").get<double>());
    }
    if (report.image_ids.empty()) throw Error(ErrorCode::EmptyInput, "report lists no images");
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseFailure, std::string("malformed distance report: ") + e.what());
  }
}

DistanceReport read_distance_report(const std::filesystem::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseFailure, path.string() + ": " + e.what());
  }
  return distance_report_from_json(doc);
}

Json to_json(const ProjectionResult& projection) {
  Json doc;
  doc["components"] = projection.z;
  doc["rank"] = projection.rank;
  doc["explained_variance"] = vector_json(projection.explained_variance);
  doc["mean"] = vector_json(projection.mean);
  return doc;
}

Json to_json(const DistanceTable& table) {
  Json doc;
  doc["columns"] = table.column_labels;
  Json rows = Json::array();
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    Json row;
    row["label"] = table.row_labels[i];
    row["raw"] = vector_json(table.raw.row(r).transpose());
    row["normalized"] = vector_json(table.normalized.row(r).transpose());
    row["zero_row"] = static_cast<bool>(table.zero_rows[i]);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

Json to_json(std::span<const SweepRow> sweep) {
  Json rows = Json::array();
  for (const auto& s : sweep) {
    Json row;
    row["components"] = s.components;
    row["o_dist"] = s.dataset_distance;
    row["delta"] = optional_json(s.delta);
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["sweep"] = std::move(rows);
  return doc;
}

Json to_json(const SplitReport& report) {
  Json doc;
  doc["parts"] = report.parts.size();
  doc["scaled"] = report.scaled;
  Json parts = Json::array();
  for (const auto& p : report.parts) {
    Json part;
    part["begin"] = p.begin;
    part["end"] = p.end;
    part["mean"] = p.mean_distance;
    part["std"] = p.std_distance;
    part["f_score"] = optional_json(p.f_score);
    parts.push_back(std::move(part));
  }
  doc["split"] = std::move(parts);
  return doc;
}

Json to_json(const ScaledSeries& series) {
  Json doc;
  doc["degenerate"] = series.degenerate;
  doc["source_min"] = series.source_min;
  doc["source_max"] = series.source_max;
  doc["values"] = series.values;
  return doc;
}

Json to_json(const OdsResult& result) {
  Json doc;
  doc["best_threshold"] = result.best_threshold;
  doc["precision"] = result.precision;
  doc["recall"] = result.recall;
  doc["f_score"] = result.f_score;
  doc["tp"] = result.tp;
  doc["fp"] = result.fp;
  doc["fn"] = result.fn;
  return doc;
}

Json to_json(const DistributionSummary& summary) {
  Json doc;
  doc["min"] = summary.min;
  doc["q1"] = summary.q1;
  doc["median"] = summary.median;
  doc["q3"] = summary.q3;
  doc["max"] = summary.max;
  doc["mean"] = summary.mean;
  doc["std"] = summary.std;
  doc["values"] = summary.values;
  return doc;
}

Json to_json(const DatasetRanking& ranking, std::size_t k) {
  auto entries = [](const std::vector<RankedDataset>& list) {
    Json out = Json::array();
    for (const auto& e : list) {
      Json row;
      row["secondary_id"] = e.secondary_id;
      row["o_dist"] = e.dataset_distance;
      out.push_back(std::move(row));
    }
    return out;
  };
  Json doc;
  doc["primary_id"] = ranking.primary_id;
  doc["ascending"] = entries(ranking.ascending);
  doc["closest"] = entries(ranking.closest(k));
  doc["farthest"] = entries(ranking.farthest(k));
  return doc;
}

Json to_json(const ExtremeImages& images) {
  Json doc;
  doc["closest"] = images.closest;
  doc["farthest"] = images.farthest;
  return doc;
}

Json to_json(std::span<const CurvePoint> curve) {
  Json points = Json::array();
  for (const auto& p : curve) {
    Json point;
    point["image_id"] = p.image_id;
    point["i_dist"] = p.distance;
    point["scaled_distance"] = p.scaled_distance;
    point["f_score"] = p.f_score;
    point["smoothed_f_score"] = p.smoothed_f_score;
    points.push_back(std::move(point));
  }
  return points;
}

std::string distance_csv(const DistanceReport& report) {
  std::string out = "image_id,i_dist\n";
  for (std::size_t j = 0; j < report.image_ids.size(); ++j) {
    out += csv_field(report.image_ids[j]) + "," + format_double(report.image_distances[j]) + "\n";
  }
  return out;
}

std::string matrix_csv(const DistanceReport& report) {
  std::string out = "image_id";
  for (std::size_t k = 0; k < static_cast<std::size_t>(report.matrix.cols()); ++k) {
    out += ",p" + std::to_string(k);
  }
  out += "\n";
  for (Eigen::Index j = 0; j < report.matrix.rows(); ++j) {
    out += csv_field(report.image_ids[static_cast<std::size_t>(j)]);
    for (Eigen::Index k = 0; k < report.matrix.cols(); ++k) {
      out += "," + format_double(report.matrix(j, k));
    }
    out += "\n";
  }
  return out;
}

std::string table_csv(const DistanceTable& table) {
  std::string out = "label,kind";
  for (const auto& c : table.column_labels) out += "," + csv_field(c);
  out += "\n";
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (const auto* kind : {"raw", "normalized"}) {
      const Matrix& m = std::string_view(kind) == "raw" ? table.raw : table.normalized;
      out += csv_field(table.row_labels[i]) + "," + kind;
      for (Eigen::Index c = 0; c < m.cols(); ++c) out += "," + format_double(m(r, c));
      out += "\n";
    }
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> sweep) {
  std::string out = "components,o_dist,delta\n";
  for (const auto& s : sweep) {
    out += std::to_string(s.components) + "," + format_double(s.dataset_distance) + "," +
           optional_csv(s.delta) + "\n";
  }
  return out;
}

std::string split_csv(const SplitReport& report) {
  std::string out = "part,begin,end,mean,std,f_score\n";
  for (std::size_t i = 0; i < report.parts.size(); ++i) {
    const auto& p = report.parts[i];
    out += std::to_string(i + 1) + "," + std::to_string(p.begin) + "," + std::to_string(p.end) +
           "," + format_double(p.mean_distance) + "," + format_double(p.std_distance) + "," +
           optional_csv(p.f_score) + "\n";
  }
  return out;
}

std::string curve_csv(std::span<const CurvePoint> curve) {
  std::string out = "image_id,i_dist,scaled_distance,f_score,smoothed_f_score\n";
  for (const auto& p : curve) {
    out += csv_field(p.image_id) + "," + format_double(p.distance) + "," +
           format_double(p.scaled_distance) + "," + format_double(p.f_score) + "," +
           format_double(p.smoothed_f_score) + "\n";
  }
  return out;
}

std::string ranking_csv(const DatasetRanking& ranking) {
  std::string out = "rank,secondary_id,o_dist\n";
  for (std::size_t i = 0; i < ranking.ascending.size(); ++i) {
    out += std::to_string(i + 1) + "," + csv_field(ranking.ascending[i].secondary_id) + "," +
           format_double(ranking.ascending[i].dataset_distance) + "\n";
  }
  return out;
}

std::string scores_csv(std::span<const std::string> image_ids, std::span<const double> scores) {
  std::string out = "id,f_score\n";
  for (std::size_t i = 0; i < image_ids.size(); ++i) {
    out += csv_field(image_ids[i]) + "," + format_double(scores[i]) + "\n";
  }
  return out;
}

std::pair<std::vector<std::string>, std::vector<double>> parse_scores_csv(std::string_view text) {
  auto m = parse_csv(text, true, "scores");
  if (m.cols() != 1) {
    throw Error(ErrorCode::ParseFailure, "score files hold exactly one value column");
  }
  std::vector<double> values(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) values[i] = m.values()(static_cast<Eigen::Index>(i), 0);
  return {m.image_ids(), std::move(values)};
}

}  // namespace dsdist
