#include "dsdist/projection.hpp"

#include "dsdist/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace dsdist {

CenteredData center_concat(const FeatureMatrix& primary, const FeatureMatrix& secondary) {
  if (primary.cols() != secondary.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "primary has " + std::to_string(primary.cols()) + " features, secondary has " +
                    std::to_string(secondary.cols()));
  }
  const auto n = static_cast<Eigen::Index>(primary.rows());
  const auto m = static_cast<Eigen::Index>(secondary.rows());
  const auto q = static_cast<Eigen::Index>(primary.cols());

  CenteredData out;
  out.primary_rows = primary.rows();
  out.centered.resize(n + m, q);
  out.centered.topRows(n) = primary.values();
  out.centered.bottomRows(m) = secondary.values();
  out.mean = out.centered.colwise().mean().transpose();
  out.centered.rowwise() -= out.mean.transpose();
  return out;
}

void normalize_component_signs(Matrix& components) {
  for (Eigen::Index c = 0; c < components.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < components.rows(); ++r) {
      double a = std::abs(components(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (components(best, c) < 0.0) components.col(c) *= -1.0;
  }
}

PcaFit fit_pca(const Matrix& centered, std::size_t z) {
  const auto rows = static_cast<std::size_t>(centered.rows());
  const auto cols = static_cast<std::size_t>(centered.cols());
  if (rows == 0 || cols == 0) throw Error(ErrorCode::DimensionZero, "empty input to PCA");
  if (z == 0) throw Error(ErrorCode::DimensionZero, "at least one component is required");
  if (z > std::min(rows, cols)) {
    throw Error(ErrorCode::TooManyComponents,
                std::to_string(z) + " components requested, at most " +
                    std::to_string(std::min(rows, cols)) + " available");
  }
  if (!centered.allFinite()) throw Error(ErrorCode::NonFinite, "PCA input contains NaN or Inf");

  const auto zi = static_cast<Eigen::Index>(z);
  const double divisor = rows > 1 ? static_cast<double>(rows - 1) : 1.0;
  PcaFit fit;

  if (centered.cwiseAbs().maxCoeff() == 0.0) {
    fit.components = Matrix::Identity(centered.cols(), zi);
    fit.explained_variance = Vector::Zero(zi);
    fit.singular_values = Vector::Zero(zi);
    fit.projected = Matrix::Zero(centered.rows(), zi);
    fit.rank = 0;
    return fit;
  }

  Eigen::MatrixXd a = centered;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();

  fit.components = svd.matrixV().leftCols(zi);
  normalize_component_signs(fit.components);
  fit.singular_values = s.head(zi);
  fit.explained_variance = s.head(zi).array().square() / divisor;
  fit.projected = centered * fit.components;

  const double cutoff = 1e-12 * s(0);
  fit.rank = static_cast<std::size_t>((s.array() > cutoff).count());
  return fit;
}

ProjectionResult project_pair(const FeatureMatrix& primary, const FeatureMatrix& secondary,
                              std::optional<std::size_t> z) {
  auto data = center_concat(primary, secondary);
  auto fit = fit_pca(data.centered, z.value_or(kDefaultComponents));
  const auto n = static_cast<Eigen::Index>(data.primary_rows);
  const auto m = static_cast<Eigen::Index>(secondary.rows());

  ProjectionResult out;
  out.mean = std::move(data.mean);
  out.z = static_cast<std::size_t>(fit.components.cols());
  out.rank = fit.rank;
  out.projected_primary = fit.projected.topRows(n);
  out.projected_secondary = fit.projected.bottomRows(m);
  out.components = std::move(fit.components);
  out.explained_variance = std::move(fit.explained_variance);
  return out;
}

}  // namespace dsdist
