#include "dsdist/feature_matrix.hpp"

#include "dsdist/error.hpp"

#include <cmath>
#include <cstring>
#include <unordered_set>

namespace dsdist {

namespace {

bool valid_label(const std::string& s) {
  return s.find_first_of("\n\r") == std::string::npos;
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::string dataset_id, std::vector<std::string> image_ids,
                             Matrix values)
    : dataset_id_(std::move(dataset_id)),
      image_ids_(std::move(image_ids)),
      values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorCode::DimensionZero, "feature matrix must have at least one row and column");
  }
  if (image_ids_.size() != rows()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(image_ids_.size()) + " ids for " +
                                               std::to_string(rows()) + " rows");
  }
  if (!valid_label(dataset_id_)) {
    throw Error(ErrorCode::InvalidId, "dataset id contains a line break");
  }
  std::unordered_set<std::string> seen;
  seen.reserve(image_ids_.size());
  for (const auto& id : image_ids_) {
    if (id.empty() || !valid_label(id)) {
      throw Error(ErrorCode::InvalidId, "image id must be non-empty and free of line breaks");
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateId, "image id '" + id + "' appears twice");
    }
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::NonFinite, "feature matrix contains NaN or Inf");
  }
}

std::vector<std::string> FeatureMatrix::synthetic_ids(std::size_t rows, const std::string& prefix) {
  std::vector<std::string> ids;
  ids.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.dataset_id_ != b.dataset_id_ || a.image_ids_ != b.image_ids_) return false;
  if (a.values_.rows() != b.values_.rows() || a.values_.cols() != b.values_.cols()) return false;
  return std::memcmp(a.values_.data(), b.values_.data(),
                     sizeof(double) * static_cast<std::size_t>(a.values_.size())) == 0;
}

}  // namespace dsdist
