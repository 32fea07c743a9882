#pragma once

#include "dsdist/analysis.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsdist {

/// Row-major grid of scalars in [0, 1]: prediction probabilities, or masks
/// where a value > 0.5 marks a positive pixel.
class PixelGrid {
 public:
  PixelGrid(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> values_;
};

/// Binary "P5" PGM, maxval 1..255, '#' comments allowed in the header.
/// Values are pixel / maxval.
PixelGrid parse_pgm(std::string_view bytes);
PixelGrid read_pgm(const std::filesystem::path& path);

/// Encodes pixel values round(v * 255) as a maxval-255 P5 file.
std::string encode_pgm(const PixelGrid& grid);

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  Confusion& operator+=(const Confusion& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
};

/// Precision, recall and F = 2PR/(P+R); every ratio with a zero denominator
/// is 0, and F is 0 whenever tp is 0.
double precision(const Confusion& c);
double recall(const Confusion& c);
double f_score(const Confusion& c);

/// A pixel is predicted positive iff its value >= threshold; the mask pixel is
/// positive iff its value > 0.5.
Confusion confusion_counts(const PixelGrid& prediction, const PixelGrid& mask, double threshold);

/// k/(steps+1) for k = 1..steps; the default gives 0.01, 0.02, ..., 0.99.
std::vector<double> default_thresholds(std::size_t steps = 99);

/// Confusion counts summed over every image, one entry per threshold. The
/// thresholds must be strictly increasing. Per-image work may run on several
/// threads; sums are integers so the result is independent of `threads`.
std::vector<Confusion> threshold_sweep(std::span<const PixelGrid> predictions,
                                       std::span<const PixelGrid> masks,
                                       std::span<const double> thresholds, unsigned threads = 1);

struct OdsResult {
  double best_threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

/// Overall dataset score: the single threshold maximizing the F-score of the
/// counts aggregated over all images. Ties go to the smallest threshold.
/// Errors: EmptyInput, LengthMismatch, DimensionMismatch, BadThresholds.
OdsResult ods(std::span<const PixelGrid> predictions, std::span<const PixelGrid> masks,
              std::span<const double> thresholds, unsigned threads = 1);

/// Each image scored on its own counts at one shared threshold.
std::vector<double> per_image_fscores(std::span<const PixelGrid> predictions,
                                      std::span<const PixelGrid> masks, double threshold,
                                      unsigned threads = 1);

/// Each image scored at its own best threshold from the grid; a sensitivity
/// check against the shared-threshold scores.
std::vector<double> per_image_best_fscores(std::span<const PixelGrid> predictions,
                                           std::span<const PixelGrid> masks,
                                           std::span<const double> thresholds,
                                           unsigned threads = 1);

/// Predictions and masks paired by file stem.
struct ImageSet {
  std::vector<std::string> image_ids;  // sorted
  std::vector<PixelGrid> predictions;
  std::vector<PixelGrid> masks;
};

/// Loads every "<id>.pgm" from both directories. MissingPair when a stem is
/// present in only one of them.
ImageSet load_image_set(const std::filesystem::path& prediction_dir,
                        const std::filesystem::path& mask_dir);

/// The subset of a set for the given ids, in the given order. MissingPair for
/// an unknown id.
ImageSet select_images(const ImageSet& set, std::span<const std::string> ids);

/// Replaces each part's f_score with the ODS F-score of that part's images
/// alone. sorted_ids lists the images in the ascending-distance order the
/// report was built from.
void attach_part_ods(SplitReport& report, std::span<const std::string> sorted_ids,
                     const ImageSet& set, std::span<const double> thresholds,
                     unsigned threads = 1);

}  // namespace dsdist
