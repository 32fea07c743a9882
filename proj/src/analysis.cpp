#include "dsdist/analysis.hpp"

#include "dsdist/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace dsdist {

namespace {

double mean_of(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double population_std(std::span<const double> v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

// Uniform integer in [0, bound) without modulo bias.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t reject_below = (std::numeric_limits<std::uint64_t>::max() - bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = gen();
    if (x >= reject_below) return x % bound;
  }
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace

std::vector<std::size_t> sort_by_distance(std::span<const double> distances) {
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });
  return order;
}

ScaledSeries min_max_scale(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "nothing to scale");
  ScaledSeries out;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.source_min = *lo;
  out.source_max = *hi;
  out.values.assign(values.size(), 0.0);
  const double range = out.source_max - out.source_min;
  if (range == 0.0) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.values[i] = std::clamp((values[i] - out.source_min) / range, 0.0, 1.0);
  }
  return out;
}

SplitReport split_stats(std::span<const double> sorted_distances,
                        std::optional<std::span<const double>> per_image_scores,
                        const SplitOptions& options) {
  const std::size_t m = sorted_distances.size();
  const std::size_t k = options.parts;
  if (m == 0) throw Error(ErrorCode::EmptyInput, "no distances to split");
  if (!options.allow_any_parts && k != 2 && k != 3) {
    throw Error(ErrorCode::BadK, "part count " + std::to_string(k) +
                                     " is not 2 or 3 (pass the override to allow it)");
  }
  if (k == 0 || k > m) {
    throw Error(ErrorCode::BadK,
                std::to_string(k) + " parts cannot be cut from " + std::to_string(m) + " images");
  }
  if (!std::is_sorted(sorted_distances.begin(), sorted_distances.end())) {
    throw Error(ErrorCode::NotSorted, "distances must be in ascending order");
  }
  if (per_image_scores && per_image_scores->size() != m) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(per_image_scores->size()) +
                                               " scores for " + std::to_string(m) + " images");
  }

  std::vector<double> series(sorted_distances.begin(), sorted_distances.end());
  if (options.scale) series = min_max_scale(sorted_distances).values;

  SplitReport report;
  report.scaled = options.scale;
  for (std::size_t i = 0; i < k; ++i) {
    SplitPart part;
    part.begin = i * m / k;
    part.end = (i + 1) * m / k;
    std::span<const double> block(series.data() + part.begin, part.end - part.begin);
    part.mean_distance = mean_of(block);
    part.std_distance = population_std(block, part.mean_distance);
    if (per_image_scores) part.f_score = mean_of(per_image_scores->subspan(part.begin, part.end - part.begin));
    report.parts.push_back(part);
  }
  return report;
}

std::vector<double> moving_average(std::span<const double> values,
                                   std::optional<std::size_t> window) {
  const std::size_t m = values.size();
  if (m == 0) throw Error(ErrorCode::EmptyInput, "nothing to smooth");
  if (window && *window == 0) throw Error(ErrorCode::ZeroWindow, "window must be at least 1");
  const std::size_t w = window.value_or(std::max<std::size_t>(1, m / 10));
  const std::size_t left = (w - 1) / 2;
  const std::size_t right = w / 2;

  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i >= left ? i - left : 0;
    const std::size_t hi = std::min(m - 1, i + right);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += values[j];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<std::size_t> select_for_adaptation(const ScaledSeries& scaled, std::size_t count,
                                               double low, double high, std::uint64_t seed) {
  if (!(low >= 0.0 && low < high && high <= 1.0)) {
    throw Error(ErrorCode::BadBand, "band must satisfy 0 <= low < high <= 1");
  }
  if (scaled.degenerate) {
    throw Error(ErrorCode::DegenerateScale, "every image is at the same distance");
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < scaled.values.size(); ++i) {
    if (scaled.values[i] >= low && scaled.values[i] <= high) candidates.push_back(i);
  }
  if (candidates.size() < count) throw InsufficientCandidatesError(candidates.size(), count);

  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(gen, candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(count);
  return candidates;
}

DistributionSummary distribution_summary(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values to summarize");
  DistributionSummary s;
  s.values.assign(values.begin(), values.end());
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.mean = mean_of(values);
  s.std = population_std(values, s.mean);
  return s;
}

std::vector<CurvePoint> smoothed_curve(std::span<const std::string> image_ids,
                                       std::span<const double> distances,
                                       std::span<const double> f_scores,
                                       std::optional<std::size_t> window) {
  if (image_ids.size() != distances.size() || f_scores.size() != distances.size()) {
    throw Error(ErrorCode::LengthMismatch, "ids, distances and scores must align");
  }
  const auto order = sort_by_distance(distances);
  std::vector<double> sorted_d, sorted_f;
  sorted_d.reserve(order.size());
  sorted_f.reserve(order.size());
  for (auto i : order) {
    sorted_d.push_back(distances[i]);
    sorted_f.push_back(f_scores[i]);
  }
  const auto scaled = min_max_scale(sorted_d);
  const auto smooth = moving_average(sorted_f, window);

  std::vector<CurvePoint> curve;
  curve.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    curve.push_back({image_ids[order[r]], sorted_d[r], scaled.values[r], sorted_f[r], smooth[r]});
  }
  return curve;
}

}  // namespace dsdist
