#pragma once

#include "dsdist/analysis.hpp"
#include "dsdist/distance.hpp"
#include "dsdist/performance.hpp"
#include "dsdist/projection.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace dsdist {

// Insertion-ordered keys keep every emitted document byte-stable.
using Json = nlohmann::ordered_json;

/// Two-space indented, newline terminated; floats carry 17 significant digits.
std::string dump_json(const Json& doc);

Json to_json(const DistanceReport& report, bool include_matrix = false);
/// Inverse of to_json for the fields the downstream commands need
/// (ids, image distances, dataset distance, primary size). ParseFailure on a
/// malformed document.
DistanceReport distance_report_from_json(const Json& doc);
DistanceReport read_distance_report(const std::filesystem::path& path);

Json to_json(const ProjectionResult& projection);
Json to_json(const DistanceTable& table);
Json to_json(std::span<const SweepRow> sweep);
Json to_json(const SplitReport& report);
Json to_json(const ScaledSeries& series);
Json to_json(const OdsResult& result);
Json to_json(const DistributionSummary& summary);
Json to_json(const DatasetRanking& ranking, std::size_t k);
Json to_json(const ExtremeImages& images);
Json to_json(std::span<const CurvePoint> curve);

std::string distance_csv(const DistanceReport& report);
std::string matrix_csv(const DistanceReport& report);
std::string table_csv(const DistanceTable& table);
std::string sweep_csv(std::span<const SweepRow> sweep);
std::string split_csv(const SplitReport& report);
std::string curve_csv(std::span<const CurvePoint> curve);
std::string ranking_csv(const DatasetRanking& ranking);
std::string scores_csv(std::span<const std::string> image_ids, std::span<const double> scores);

/// Two-column "image_id,value" CSV with a header row, as written by
/// scores_csv. Returns ids and values in file order.
std::pair<std::vector<std::string>, std::vector<double>> parse_scores_csv(std::string_view text);

}  // namespace dsdist
