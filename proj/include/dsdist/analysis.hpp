#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsdist {

/// Stable ascending order of the values; equal values keep their input order.
std::vector<std::size_t> sort_by_distance(std::span<const double> distances);

struct ScaledSeries {
  std::vector<double> values;  // in [0, 1]
  bool degenerate = false;     // every input equal; values are all zero
  double source_min = 0.0;
  double source_max = 0.0;
};

/// (x - min) / (max - min). Constant input is flagged, not rejected.
ScaledSeries min_max_scale(std::span<const double> values);

struct SplitPart {
  std::size_t begin = 0;  // [begin, end) in the ascending-distance order
  std::size_t end = 0;
  double mean_distance = 0.0;
  double std_distance = 0.0;  // population standard deviation
  std::optional<double> f_score;
};

struct SplitReport {
  std::vector<SplitPart> parts;
  bool scaled = false;
};

struct SplitOptions {
  std::size_t parts = 2;
  bool scale = true;          // min-max scale the whole series before the statistics
  bool allow_any_parts = false;
};

/// Cuts an ascending distance series into `parts` contiguous blocks at
/// floor(i*m/parts); later blocks absorb the remainder. When per-image scores
/// are given (aligned with the sorted order) each part's f_score is their mean.
///
/// Errors: BadK for parts outside {2, 3} (any 1 <= parts <= m with
/// allow_any_parts), NotSorted, LengthMismatch, EmptyInput.
SplitReport split_stats(std::span<const double> sorted_distances,
                        std::optional<std::span<const double>> per_image_scores,
                        const SplitOptions& options);

/// Centered moving average. A window of w covers (w-1)/2 neighbours on the
/// left and w/2 on the right, truncated at the series ends. The default
/// window is max(1, floor(m/10)). ZeroWindow for an explicit 0.
std::vector<double> moving_average(std::span<const double> values,
                                   std::optional<std::size_t> window = std::nullopt);

inline constexpr double kDefaultBandLow = 0.6;
inline constexpr double kDefaultBandHigh = 1.0;

/// Draws `count` indices uniformly without replacement from the images whose
/// scaled distance lies in [low, high]. The draw is a partial Fisher-Yates
/// shuffle of the ascending candidate list driven by std::mt19937_64(seed),
/// with bounded integers taken by rejection sampling, so a given
/// (series, count, band, seed) always yields the same indices in the same order.
///
/// Errors: BadBand unless 0 <= low < high <= 1; DegenerateScale on a constant
/// series; InsufficientCandidatesError when the band is too small.
std::vector<std::size_t> select_for_adaptation(const ScaledSeries& scaled, std::size_t count,
                                               double low, double high, std::uint64_t seed);

struct DistributionSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population
  std::vector<double> values;
};

/// Five-number summary plus mean/std; quantiles interpolate linearly between
/// closest ranks at position p*(m-1). The raw values ride along for violin plots.
DistributionSummary distribution_summary(std::span<const double> values);

struct CurvePoint {
  std::string image_id;
  double distance = 0.0;
  double scaled_distance = 0.0;
  double f_score = 0.0;
  double smoothed_f_score = 0.0;
};

/// F-score against image distance: points sorted by distance, distances
/// min-max scaled, F-scores smoothed with moving_average in that order.
std::vector<CurvePoint> smoothed_curve(std::span<const std::string> image_ids,
                                       std::span<const double> distances,
                                       std::span<const double> f_scores,
                                       std::optional<std::size_t> window = std::nullopt);

}  // namespace dsdist
