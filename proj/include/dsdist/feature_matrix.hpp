#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace dsdist {

// Rows are images, columns are feature dimensions.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// An n x q block of per-image feature vectors with the ids of the images that
/// produced them. Immutable once constructed; the constructor enforces
///   - n >= 1 and q >= 1
///   - every value finite
///   - one unique, newline-free id per row
class FeatureMatrix {
 public:
  FeatureMatrix(std::string dataset_id, std::vector<std::string> image_ids, Matrix values);

  /// Ids "row0", "row1", ... for sources that carry none.
  static std::vector<std::string> synthetic_ids(std::size_t rows, const std::string& prefix = "row");

  const std::string& dataset_id() const noexcept { return dataset_id_; }
  const std::vector<std::string>& image_ids() const noexcept { return image_ids_; }
  const Matrix& values() const noexcept { return values_; }

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }

  /// Exact equality: ids match and every value is bitwise identical.
  friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b);

 private:
  std::string dataset_id_;
  std::vector<std::string> image_ids_;
  Matrix values_;
};

}  // namespace dsdist
