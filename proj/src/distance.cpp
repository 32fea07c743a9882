#include "dsdist/distance.hpp"

#include "dsdist/error.hpp"
#include "dsdist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsdist {

Matrix pairwise(const Matrix& secondary_proj, const Matrix& primary_proj, unsigned threads) {
  if (secondary_proj.cols() != primary_proj.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "secondary has " + std::to_string(secondary_proj.cols()) +
                    " coordinates, primary has " + std::to_string(primary_proj.cols()));
  }
  const Eigen::Index m = secondary_proj.rows();
  const Eigen::Index n = primary_proj.rows();
  const Eigen::Index z = primary_proj.cols();
  Matrix out(m, n);
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t row) {
    const auto j = static_cast<Eigen::Index>(row);
    const double* s = secondary_proj.row(j).data();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double* p = primary_proj.row(k).data();
      double acc = 0.0;
      for (Eigen::Index c = 0; c < z; ++c) {
        const double d = s[c] - p[c];
        acc += d * d;
      }
      out(j, k) = std::sqrt(acc);
    }
  });
  return out;
}

std::vector<double> image_distances(const Matrix& distances) {
  std::vector<double> sums(static_cast<std::size_t>(distances.rows()), 0.0);
  for (Eigen::Index j = 0; j < distances.rows(); ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < distances.cols(); ++k) acc += distances(j, k);
    sums[static_cast<std::size_t>(j)] = acc;
  }
  return sums;
}

double dataset_distance(std::span<const double> image_distances) {
  if (image_distances.empty()) throw Error(ErrorCode::EmptyInput, "no image distances");
  double acc = 0.0;
  for (double v : image_distances) acc += v;
  return acc / static_cast<double>(image_distances.size());
}

DistanceReport distance_from_projection(const FeatureMatrix& primary,
                                        const FeatureMatrix& secondary,
                                        const ProjectionResult& projection, unsigned threads) {
  DistanceReport report;
  report.primary_id = primary.dataset_id();
  report.secondary_id = secondary.dataset_id();
  report.image_ids = secondary.image_ids();
  report.primary_rows = primary.rows();
  report.components = projection.z;
  report.matrix = pairwise(projection.projected_secondary, projection.projected_primary, threads);
  report.image_distances = image_distances(report.matrix);
  report.dataset_distance = dataset_distance(report.image_distances);
  return report;
}

DistanceReport compute_distance(const FeatureMatrix& primary, const FeatureMatrix& secondary,
                                std::optional<std::size_t> components, unsigned threads) {
  return distance_from_projection(primary, secondary,
                                  project_pair(primary, secondary, components), threads);
}

NormalizedRows normalize_rows(const Matrix& raw) {
  NormalizedRows out;
  out.values = Matrix::Zero(raw.rows(), raw.cols());
  out.zero_rows.assign(static_cast<std::size_t>(raw.rows()), false);
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < raw.cols(); ++j) sum += raw(i, j);
    if (sum == 0.0) {
      out.zero_rows[static_cast<std::size_t>(i)] = true;
      continue;
    }
    for (Eigen::Index j = 0; j < raw.cols(); ++j) out.values(i, j) = raw(i, j) / sum;
  }
  return out;
}

DistanceTable make_distance_table(std::vector<std::string> row_labels,
                                  std::vector<std::string> column_labels, Matrix raw) {
  if (row_labels.size() != static_cast<std::size_t>(raw.rows()) ||
      column_labels.size() != static_cast<std::size_t>(raw.cols())) {
    throw Error(ErrorCode::LengthMismatch, "table labels do not match its shape");
  }
  if (!raw.allFinite() || (raw.array() < 0.0).any()) {
    throw Error(ErrorCode::NonFinite, "table entries must be finite and nonnegative");
  }
  auto norm = normalize_rows(raw);
  DistanceTable table;
  table.row_labels = std::move(row_labels);
  table.column_labels = std::move(column_labels);
  table.raw = std::move(raw);
  table.normalized = std::move(norm.values);
  table.zero_rows = std::move(norm.zero_rows);
  return table;
}

std::vector<SweepRow> pc_sweep(const FeatureMatrix& primary, const FeatureMatrix& secondary,
                               std::span<const std::size_t> components, unsigned threads) {
  if (components.empty()) throw Error(ErrorCode::EmptyInput, "no component counts to sweep");
  const std::size_t limit = std::min(primary.rows() + secondary.rows(), primary.cols());
  const std::size_t largest = *std::max_element(components.begin(), components.end());
  if (largest > limit) {
    throw Error(ErrorCode::TooManyComponents, std::to_string(largest) +
                                                  " components requested, at most " +
                                                  std::to_string(limit) + " available");
  }
  std::vector<SweepRow> rows;
  rows.reserve(components.size());
  for (std::size_t z : components) {
    auto report = compute_distance(primary, secondary, z, threads);
    SweepRow row;
    row.components = z;
    row.dataset_distance = report.dataset_distance;
    if (!rows.empty()) row.delta = std::abs(row.dataset_distance - rows.back().dataset_distance);
    rows.push_back(row);
  }
  return rows;
}

std::vector<RankedDataset> DatasetRanking::closest(std::size_t k) const {
  k = std::min(k, ascending.size());
  return {ascending.begin(), ascending.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<RankedDataset> DatasetRanking::farthest(std::size_t k) const {
  k = std::min(k, ascending.size());
  return {ascending.rbegin(), ascending.rbegin() + static_cast<std::ptrdiff_t>(k)};
}

DatasetRanking rank_by_distance(std::string primary_id, std::vector<RankedDataset> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RankedDataset& a, const RankedDataset& b) {
                     if (a.dataset_distance != b.dataset_distance) {
                       return a.dataset_distance < b.dataset_distance;
                     }
                     return a.secondary_id < b.secondary_id;
                   });
  return DatasetRanking{std::move(primary_id), std::move(entries)};
}

DatasetRanking rank_datasets(std::span<const DistanceReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::EmptyInput, "no reports to rank");
  std::vector<RankedDataset> entries;
  entries.reserve(reports.size());
  for (const auto& r : reports) {
    if (r.primary_id != reports.front().primary_id) {
      throw Error(ErrorCode::MixedPrimary, "reports measured against '" +
                                               reports.front().primary_id + "' and '" +
                                               r.primary_id + "'");
    }
    entries.push_back({r.secondary_id, r.dataset_distance});
  }
  return rank_by_distance(reports.front().primary_id, std::move(entries));
}

ExtremeImages extreme_images(const DistanceReport& report, std::size_t k) {
  const std::size_t m = report.image_distances.size();
  if (report.image_ids.size() != m) {
    throw Error(ErrorCode::LengthMismatch, "image ids and distances differ in length");
  }
  if (k > m) {
    throw Error(ErrorCode::KTooLarge,
                std::to_string(k) + " requested from " + std::to_string(m) + " images");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& d = report.image_distances;
  const auto& ids = report.image_ids;

  ExtremeImages out;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d[a] != d[b] ? d[a] < d[b] : ids[a] < ids[b];
  });
  for (std::size_t i = 0; i < k; ++i) out.closest.push_back(ids[order[i]]);

  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d[a] != d[b] ? d[a] > d[b] : ids[a] < ids[b];
  });
  for (std::size_t i = 0; i < k; ++i) out.farthest.push_back(ids[order[i]]);
  return out;
}

}  // namespace dsdist
