#pragma once

#include "dsdist/feature_matrix.hpp"
#include "dsdist/projection.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsdist {

/// Distances of one secondary dataset S from a primary dataset P.
///
/// matrix(j, k) is the Euclidean distance between projected secondary image j
/// and projected primary image k. image_distances[j] is the row sum (the
/// image-to-dataset distance) and dataset_distance is their mean (the
/// dataset-to-dataset distance). Row sums are unnormalized, so they scale with
/// the primary size; compare only reports that share a primary.
struct DistanceReport {
  std::string primary_id;
  std::string secondary_id;
  std::vector<std::string> image_ids;  // secondary ids, aligned with image_distances
  std::size_t primary_rows = 0;
  std::size_t components = 0;
  Matrix matrix;                        // m x n
  std::vector<double> image_distances;  // m
  double dataset_distance = 0.0;
};

/// Entry (j, k) = ||secondary_j - primary_k||_2, coordinates summed in
/// ascending index order. Rows may be split across threads; each row's
/// reduction order is fixed so the result does not depend on `threads`.
Matrix pairwise(const Matrix& secondary_proj, const Matrix& primary_proj, unsigned threads = 1);

/// Row sums, each accumulated left to right.
std::vector<double> image_distances(const Matrix& distances);

/// Arithmetic mean; EmptyInput on an empty vector.
double dataset_distance(std::span<const double> image_distances);

/// Projection of the pair followed by pairwise / row sums / mean.
DistanceReport compute_distance(const FeatureMatrix& primary, const FeatureMatrix& secondary,
                                std::optional<std::size_t> components = std::nullopt,
                                unsigned threads = 1);

/// Same, reusing an existing projection of the pair.
DistanceReport distance_from_projection(const FeatureMatrix& primary,
                                        const FeatureMatrix& secondary,
                                        const ProjectionResult& projection, unsigned threads = 1);

struct NormalizedRows {
  Matrix values;
  std::vector<bool> zero_rows;  // rows whose raw sum was 0; left all-zero
};

/// Divides every row by its sum. Rows summing to zero are flagged rather than
/// rejected, since a model collapsing every image to one point is a finding.
NormalizedRows normalize_rows(const Matrix& raw);

/// Models x secondary datasets, raw and row-normalized.
struct DistanceTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  Matrix raw;
  Matrix normalized;
  std::vector<bool> zero_rows;
};

DistanceTable make_distance_table(std::vector<std::string> row_labels,
                                  std::vector<std::string> column_labels, Matrix raw);

struct SweepRow {
  std::size_t components = 0;
  double dataset_distance = 0.0;
  std::optional<double> delta;  // |this - previous row|, absent on the first row
};

/// Full projection + distance pipeline once per requested component count,
/// in the order given.
std::vector<SweepRow> pc_sweep(const FeatureMatrix& primary, const FeatureMatrix& secondary,
                               std::span<const std::size_t> components, unsigned threads = 1);

struct RankedDataset {
  std::string secondary_id;
  double dataset_distance = 0.0;
};

struct DatasetRanking {
  std::string primary_id;
  std::vector<RankedDataset> ascending;  // closest first

  /// First k of the ascending order (all when k exceeds the size).
  std::vector<RankedDataset> closest(std::size_t k) const;
  /// Farthest first.
  std::vector<RankedDataset> farthest(std::size_t k) const;
};

/// Sorted by distance ascending, ties broken by secondary id.
DatasetRanking rank_by_distance(std::string primary_id, std::vector<RankedDataset> entries);

/// Ranks reports that share a primary; MixedPrimary otherwise, EmptyInput on
/// an empty list.
DatasetRanking rank_datasets(std::span<const DistanceReport> reports);

struct ExtremeImages {
  std::vector<std::string> closest;   // smallest image distance first
  std::vector<std::string> farthest;  // largest image distance first
};

/// The k closest and k farthest secondary images, ties broken by image id.
/// KTooLarge when k exceeds the image count.
ExtremeImages extreme_images(const DistanceReport& report, std::size_t k);

}  // namespace dsdist
