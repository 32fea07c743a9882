#pragma once

#include "dsdist/feature_matrix.hpp"

#include <cstddef>
#include <optional>

namespace dsdist {

inline constexpr std::size_t kDefaultComponents = 25;

/// Primary rows followed by secondary rows, minus their joint column mean.
struct CenteredData {
  Matrix centered;            // (n+m) x q
  Vector mean;                // q
  std::size_t primary_rows;   // n
};

/// Top-z principal axes of a centered matrix and the data projected onto them.
///
/// Component columns are the leading right singular vectors, ordered by
/// singular value. Each column is sign-normalized so that its entry of largest
/// magnitude is positive (first such index on exact ties); this only fixes the
/// arbitrary SVD sign and leaves every distance between projected rows intact.
/// explained_variance[i] = s_i^2 / (rows - 1).
struct PcaFit {
  Matrix components;          // q x z, orthonormal columns
  Vector explained_variance;  // z, nonincreasing
  Vector singular_values;     // z
  Matrix projected;           // rows x z, centered * components
  std::size_t rank = 0;       // singular values above 1e-12 * largest
};

struct ProjectionResult {
  Vector mean;
  Matrix components;
  Vector explained_variance;
  Matrix projected_primary;    // n x z
  Matrix projected_secondary;  // m x z
  std::size_t z = 0;
  std::size_t rank = 0;
};

/// Throws DimensionMismatch when the two matrices disagree on q.
CenteredData center_concat(const FeatureMatrix& primary, const FeatureMatrix& secondary);

/// Requires 1 <= z <= min(rows, cols) (TooManyComponents otherwise). An
/// all-zero input is not an error: projections and variances come back zero.
PcaFit fit_pca(const Matrix& centered, std::size_t z);

/// center_concat then fit_pca, with the projection split back into the
/// primary and secondary blocks. z defaults to kDefaultComponents.
ProjectionResult project_pair(const FeatureMatrix& primary, const FeatureMatrix& secondary,
                              std::optional<std::size_t> z = std::nullopt);

/// Makes the largest-magnitude entry of every column positive.
void normalize_component_signs(Matrix& components);

}  // namespace dsdist
