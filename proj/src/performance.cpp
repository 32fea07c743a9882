#include "dsdist/performance.hpp"

#include "dsdist/error.hpp"
#include "dsdist/file_util.hpp"
#include "dsdist/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace dsdist {

namespace fs = std::filesystem;

namespace {

constexpr double kMaskCut = 0.5;

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and comments, then reads an unsigned decimal token.
  std::uint64_t number(const char* what) {
    skip_space();
    std::uint64_t v = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (v > (1ull << 32)) throw Error(ErrorCode::BadHeader, std::string(what) + " is too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::BadHeader, std::string("missing ") + what);
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::BadHeader, "no separator before pixel data");
    }
    return pos_ + 1;
  }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

void check_pairs(std::span<const PixelGrid> predictions, std::span<const PixelGrid> masks) {
  if (predictions.empty()) throw Error(ErrorCode::EmptyInput, "no images to evaluate");
  if (predictions.size() != masks.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) +
                                               " predictions for " + std::to_string(masks.size()) +
                                               " masks");
  }
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].width() != masks[i].width() ||
        predictions[i].height() != masks[i].height()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "image " + std::to_string(i) + " prediction and mask sizes differ");
    }
  }
}

void check_thresholds(std::span<const double> thresholds) {
  if (thresholds.empty()) throw Error(ErrorCode::BadThresholds, "empty threshold grid");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i]) || (i > 0 && thresholds[i] <= thresholds[i - 1])) {
      throw Error(ErrorCode::BadThresholds, "thresholds must be finite and strictly increasing");
    }
  }
}

// Counts for one image at every threshold. A pixel of value v is positive at
// thresholds[0 .. b) where b = #thresholds <= v, so one histogram over b and a
// suffix sum give every threshold's counts.
std::vector<Confusion> image_sweep(const PixelGrid& prediction, const PixelGrid& mask,
                                   std::span<const double> thresholds) {
  const std::size_t t = thresholds.size();
  std::vector<std::uint64_t> pos_hist(t + 1, 0), neg_hist(t + 1, 0);
  const auto& p = prediction.values();
  const auto& g = mask.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto b = static_cast<std::size_t>(
        std::upper_bound(thresholds.begin(), thresholds.end(), p[i]) - thresholds.begin());
    if (g[i] > kMaskCut) {
      ++pos_hist[b];
    } else {
      ++neg_hist[b];
    }
  }
  std::uint64_t total_pos = 0, total_neg = 0;
  for (std::size_t b = 0; b <= t; ++b) {
    total_pos += pos_hist[b];
    total_neg += neg_hist[b];
  }
  std::vector<Confusion> out(t);
  std::uint64_t tp = 0, fp = 0;
  for (std::size_t i = t; i-- > 0;) {
    tp += pos_hist[i + 1];
    fp += neg_hist[i + 1];
    out[i] = Confusion{tp, fp, total_pos - tp, total_neg - fp};
  }
  return out;
}

}  // namespace

PixelGrid::PixelGrid(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width_ == 0 || height_ == 0) throw Error(ErrorCode::DimensionZero, "empty pixel grid");
  if (values_.size() != width_ * height_) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(values_.size()) + " values for a " +
                                               std::to_string(width_) + "x" +
                                               std::to_string(height_) + " grid");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::OutOfRange, "pixel values must lie in [0, 1]");
  }
}

PixelGrid parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorCode::BadHeader, "not a binary (P5) PGM");
  }
  HeaderReader header(bytes);
  const auto width = header.number("width");
  const auto height = header.number("height");
  const auto maxval = header.number("maxval");
  if (width == 0 || height == 0) throw Error(ErrorCode::BadHeader, "zero image dimension");
  if (maxval == 0 || maxval > 255) {
    throw Error(ErrorCode::UnsupportedMaxval, "maxval " + std::to_string(maxval));
  }
  const std::size_t start = header.raster_start();
  const std::uint64_t count = width * height;
  if (bytes.size() < start || bytes.size() - start < count) {
    throw Error(ErrorCode::TruncatedPayload, "expected " + std::to_string(count) + " pixels");
  }
  std::vector<double> values(count);
  const auto scale = static_cast<double>(maxval);
  for (std::size_t i = 0; i < count; ++i) {
    const auto px = static_cast<unsigned char>(bytes[start + i]);
    if (px > maxval) throw Error(ErrorCode::OutOfRange, "pixel exceeds maxval");
    values[i] = static_cast<double>(px) / scale;
  }
  return PixelGrid(width, height, std::move(values));
}

PixelGrid read_pgm(const fs::path& path) { return parse_pgm(read_file(path)); }

std::string encode_pgm(const PixelGrid& grid) {
  std::string out = "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) +
                    "\n255\n";
  for (double v : grid.values()) out.push_back(static_cast<char>(std::lround(v * 255.0)));
  return out;
}

double precision(const Confusion& c) {
  const auto d = c.tp + c.fp;
  return d == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(d);
}

double recall(const Confusion& c) {
  const auto d = c.tp + c.fn;
  return d == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(d);
}

double f_score(const Confusion& c) {
  if (c.tp == 0) return 0.0;
  const double p = precision(c);
  const double r = recall(c);
  return 2.0 * p * r / (p + r);
}

Confusion confusion_counts(const PixelGrid& prediction, const PixelGrid& mask, double threshold) {
  if (prediction.width() != mask.width() || prediction.height() != mask.height()) {
    throw Error(ErrorCode::DimensionMismatch, "prediction and mask sizes differ");
  }
  Confusion c;
  const auto& p = prediction.values();
  const auto& g = mask.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool predicted = p[i] >= threshold;
    const bool actual = g[i] > kMaskCut;
    if (predicted && actual) {
      ++c.tp;
    } else if (predicted) {
      ++c.fp;
    } else if (actual) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

std::vector<double> default_thresholds(std::size_t steps) {
  std::vector<double> grid;
  grid.reserve(steps);
  const auto denom = static_cast<double>(steps + 1);
  for (std::size_t k = 1; k <= steps; ++k) grid.push_back(static_cast<double>(k) / denom);
  return grid;
}

std::vector<Confusion> threshold_sweep(std::span<const PixelGrid> predictions,
                                       std::span<const PixelGrid> masks,
                                       std::span<const double> thresholds, unsigned threads) {
  check_pairs(predictions, masks);
  check_thresholds(thresholds);
  std::vector<std::vector<Confusion>> per_image(predictions.size());
  parallel_for(predictions.size(), threads, [&](std::size_t i) {
    per_image[i] = image_sweep(predictions[i], masks[i], thresholds);
  });
  std::vector<Confusion> total(thresholds.size());
  for (const auto& counts : per_image) {
    for (std::size_t t = 0; t < counts.size(); ++t) total[t] += counts[t];
  }
  return total;
}

OdsResult ods(std::span<const PixelGrid> predictions, std::span<const PixelGrid> masks,
              std::span<const double> thresholds, unsigned threads) {
  const auto sweep = threshold_sweep(predictions, masks, thresholds, threads);
  std::size_t best = 0;
  double best_f = f_score(sweep[0]);
  for (std::size_t t = 1; t < sweep.size(); ++t) {
    const double f = f_score(sweep[t]);
    if (f > best_f) {
      best_f = f;
      best = t;
    }
  }
  const auto& c = sweep[best];
  return OdsResult{thresholds[best], precision(c), recall(c), best_f, c.tp, c.fp, c.fn};
}

std::vector<double> per_image_fscores(std::span<const PixelGrid> predictions,
                                      std::span<const PixelGrid> masks, double threshold,
                                      unsigned threads) {
  check_pairs(predictions, masks);
  std::vector<double> scores(predictions.size());
  parallel_for(predictions.size(), threads, [&](std::size_t i) {
    scores[i] = f_score(confusion_counts(predictions[i], masks[i], threshold));
  });
  return scores;
}

std::vector<double> per_image_best_fscores(std::span<const PixelGrid> predictions,
                                           std::span<const PixelGrid> masks,
                                           std::span<const double> thresholds, unsigned threads) {
  check_pairs(predictions, masks);
  check_thresholds(thresholds);
  std::vector<double> scores(predictions.size());
  parallel_for(predictions.size(), threads, [&](std::size_t i) {
    double best = 0.0;
    for (const auto& c : image_sweep(predictions[i], masks[i], thresholds)) {
      best = std::max(best, f_score(c));
    }
    scores[i] = best;
  });
  return scores;
}

ImageSet load_image_set(const fs::path& prediction_dir, const fs::path& mask_dir) {
  auto list = [](const fs::path& dir) {
    std::map<std::string, fs::path> files;
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot list '" + dir.string() + "'");
    for (const auto& entry : it) {
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
        files.emplace(entry.path().stem().string(), entry.path());
      }
    }
    return files;
  };
  const auto preds = list(prediction_dir);
  const auto masks = list(mask_dir);
  for (const auto& [id, path] : preds) {
    if (!masks.count(id)) throw Error(ErrorCode::MissingPair, "no mask for prediction '" + id + "'");
  }
  for (const auto& [id, path] : masks) {
    if (!preds.count(id)) throw Error(ErrorCode::MissingPair, "no prediction for mask '" + id + "'");
  }
  ImageSet set;
  for (const auto& [id, path] : preds) {
    set.image_ids.push_back(id);
    set.predictions.push_back(read_pgm(path));
    set.masks.push_back(read_pgm(masks.at(id)));
  }
  return set;
}

ImageSet select_images(const ImageSet& set, std::span<const std::string> ids) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < set.image_ids.size(); ++i) index.emplace(set.image_ids[i], i);
  ImageSet out;
  for (const auto& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::MissingPair, "no prediction/mask pair for '" + id + "'");
    out.image_ids.push_back(id);
    out.predictions.push_back(set.predictions[it->second]);
    out.masks.push_back(set.masks[it->second]);
  }
  return out;
}

void attach_part_ods(SplitReport& report, std::span<const std::string> sorted_ids,
                     const ImageSet& set, std::span<const double> thresholds, unsigned threads) {
  for (auto& part : report.parts) {
    if (part.end > sorted_ids.size()) {
      throw Error(ErrorCode::LengthMismatch, "split covers more images than were supplied");
    }
    auto subset = select_images(set, sorted_ids.subspan(part.begin, part.end - part.begin));
    part.f_score = ods(subset.predictions, subset.masks, thresholds, threads).f_score;
  }
}

}  // namespace dsdist
