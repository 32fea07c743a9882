#include "dsdist/projection.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dsdist;
using testutil::features;
using testutil::from_rows;
using testutil::to_rows;

namespace {

// Largest |a - b| after matching each column of `got` to `want` up to sign.
double signed_column_gap(const oracle::Rows& got, const oracle::Rows& want) {
  double worst = 0.0;
  const std::size_t cols = want.front().size();
  for (std::size_t c = 0; c < cols; ++c) {
    double same = 0.0, flipped = 0.0;
    for (std::size_t r = 0; r < want.size(); ++r) {
      same = std::max(same, std::abs(got[r][c] - want[r][c]));
      flipped = std::max(flipped, std::abs(got[r][c] + want[r][c]));
    }
    worst = std::max(worst, std::min(same, flipped));
  }
  return worst;
}

}  // namespace

TEST(CenterConcat, TwoPointSymmetry) {
  auto c = center_concat(features("P", {{2}}), features("S", {{4}}));
  EXPECT_EQ(c.mean(0), 3.0);
  EXPECT_EQ(c.centered(0, 0), -1.0);
  EXPECT_EQ(c.centered(1, 0), 1.0);
  EXPECT_EQ(c.primary_rows, 1u);
}

TEST(CenterConcat, IdenticalRowsCenterToZero) {
  auto c = center_concat(features("P", {{1, 1}}), features("S", {{1, 1}}));
  EXPECT_TRUE(c.centered.isZero(0.0));
}

TEST(CenterConcat, HandWorkedExampleMatchesOracle) {
  oracle::Rows p = {{0, 0}, {2, 0}, {4, 0}};
  oracle::Rows s = {{2, 4}};
  auto c = center_concat(features("P", p), features("S", s));
  auto [want, mean] = oracle::center(p, s);
  EXPECT_EQ(mean, (std::vector<double>{2, 1}));
  EXPECT_EQ(to_rows(c.centered), (oracle::Rows{{-2, -1}, {0, -1}, {2, -1}, {0, 3}}));
  EXPECT_EQ(to_rows(c.centered), want);
}

TEST(CenterConcat, ColumnSumsVanish) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 12, m = 1 + rng() % 12, q = 1 + rng() % 6;
    FeatureMatrix p("P", FeatureMatrix::synthetic_ids(n), testutil::random_matrix(rng, n, q, 5.0));
    FeatureMatrix s("S", FeatureMatrix::synthetic_ids(m), testutil::random_matrix(rng, m, q, 5.0));
    auto c = center_concat(p, s);
    for (Eigen::Index j = 0; j < c.centered.cols(); ++j) {
      EXPECT_LE(std::abs(c.centered.col(j).sum()), 1e-9 * static_cast<double>(n + m));
    }
  }
}

TEST(CenterConcat, DimensionMismatch) {
  EXPECT_ERROR(center_concat(features("P", {{1, 2}}), features("S", {{1}})), DimensionMismatch);
}

TEST(FitPca, OneActiveAxis) {
  auto fit = fit_pca(from_rows({{-1, 0}, {1, 0}}), 1);
  ASSERT_EQ(fit.projected.rows(), 2);
  EXPECT_NEAR(std::abs(fit.projected(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(fit.projected(0, 0), -fit.projected(1, 0), 1e-12);
  EXPECT_NEAR(fit.explained_variance(0), 2.0, 1e-12);
  // The component's largest entry is positive, so x = +1 maps to +1.
  EXPECT_NEAR(fit.projected(1, 0), 1.0, 1e-12);
}

TEST(FitPca, TooManyComponents) {
  EXPECT_ERROR(fit_pca(from_rows({{-1, 0}, {1, 0}}), 3), TooManyComponents);
  EXPECT_ERROR(fit_pca(from_rows({{-1, 0, 0}, {1, 0, 0}}), 3), TooManyComponents);
  EXPECT_ERROR(fit_pca(from_rows({{-1, 0}, {1, 0}}), 0), DimensionZero);
}

TEST(FitPca, DegenerateInputGivesZeros) {
  auto fit = fit_pca(Matrix::Zero(4, 3), 2);
  EXPECT_TRUE(fit.projected.isZero(0.0));
  EXPECT_TRUE(fit.explained_variance.isZero(0.0));
  EXPECT_EQ(fit.rank, 0u);
  EXPECT_TRUE((fit.components.transpose() * fit.components).isIdentity(1e-12));
}

TEST(FitPca, MatchesCovarianceOracle) {
  std::mt19937_64 rng(20);
  auto a = testutil::random_matrix(rng, 10, 6);
  auto c = center_concat(FeatureMatrix("P", FeatureMatrix::synthetic_ids(6), a.topRows(6)),
                         FeatureMatrix("S", FeatureMatrix::synthetic_ids(4), a.bottomRows(4)));
  auto fit = fit_pca(c.centered, 3);
  auto want = oracle::pca_project(to_rows(c.centered), 3);
  EXPECT_LE(signed_column_gap(to_rows(fit.projected), want), 1e-8);
}

TEST(FitPca, ComponentsOrthonormalAndVarianceOrdered) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    const std::size_t rows = 2 + rng() % 19, cols = 1 + rng() % 10;
    Matrix a = testutil::random_matrix(rng, rows, cols);
    a.rowwise() -= a.colwise().mean();
    const std::size_t z = 1 + rng() % std::min(rows, cols);
    auto fit = fit_pca(a, z);
    Matrix gram = fit.components.transpose() * fit.components;
    EXPECT_LE((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 1e-9);
    for (Eigen::Index i = 0; i + 1 < fit.explained_variance.size(); ++i) {
      EXPECT_GE(fit.explained_variance(i), fit.explained_variance(i + 1));
    }
    EXPECT_GE(fit.explained_variance.minCoeff(), 0.0);
    EXPECT_LE(fit.projected.colwise().mean().cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(FitPca, SignConventionLargestEntryPositive) {
  std::mt19937_64 rng(8);
  auto a = testutil::random_matrix(rng, 12, 5);
  a.rowwise() -= a.colwise().mean();
  auto fit = fit_pca(a, 5);
  for (Eigen::Index c = 0; c < fit.components.cols(); ++c) {
    Eigen::Index arg = 0;
    fit.components.col(c).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(fit.components(arg, c), 0.0);
  }
  // Fitting the negated data gives the same components.
  auto neg = fit_pca(-a, 5);
  EXPECT_LE((neg.components - fit.components).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FitPca, SignTiesGoToFirstIndex) {
  Matrix v(2, 1);
  v << -0.5, 0.5;
  normalize_component_signs(v);
  EXPECT_GT(v(0, 0), 0.0);
  EXPECT_LT(v(1, 0), 0.0);
}

TEST(FitPca, RankCountsSignificantSingularValues) {
  std::mt19937_64 rng(13);
  Matrix a = testutil::random_matrix(rng, 20, 2) * testutil::random_matrix(rng, 2, 8);
  a.rowwise() -= a.colwise().mean();
  EXPECT_EQ(fit_pca(a, 8).rank, 2u);
}

TEST(ProjectPair, OneDimensionalSplit) {
  auto r = project_pair(features("P", {{0}, {2}}), features("S", {{4}}), 1);
  EXPECT_NEAR(std::abs(r.projected_primary(0, 0)), 2.0, 1e-12);
  EXPECT_NEAR(r.projected_primary(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.projected_secondary(0, 0)), 2.0, 1e-12);
  EXPECT_NEAR(r.projected_primary(0, 0), -r.projected_secondary(0, 0), 1e-12);
  EXPECT_EQ(r.mean(0), 2.0);
}

TEST(ProjectPair, DefaultsToTwentyFiveComponents) {
  auto p = testutil::gaussian("P", 20, 30, 0.0, 1);
  auto s = testutil::gaussian("S", 20, 30, 1.0, 2);
  auto r = project_pair(p, s);
  EXPECT_EQ(kDefaultComponents, 25u);
  EXPECT_EQ(r.z, 25u);
  EXPECT_EQ(r.projected_primary.cols(), 25);
  EXPECT_EQ(r.projected_secondary.rows(), 20);
}

TEST(ProjectPair, FullRankIsometry) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3 + rng() % 8, m = 3 + rng() % 8, q = 2 + rng() % 5;
    FeatureMatrix p("P", FeatureMatrix::synthetic_ids(n), testutil::random_matrix(rng, n, q));
    FeatureMatrix s("S", FeatureMatrix::synthetic_ids(m), testutil::random_matrix(rng, m, q));
    auto r = project_pair(p, s, q);
    auto c = center_concat(p, s);
    Matrix y(n + m, q);
    y << r.projected_primary, r.projected_secondary;
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < y.rows(); ++j) {
        const double want = (c.centered.row(i) - c.centered.row(j)).norm();
        const double got = (y.row(i) - y.row(j)).norm();
        EXPECT_LE(std::abs(got - want), 1e-9 * std::max(1.0, want));
      }
    }
  }
}

TEST(ProjectPair, SignFlipLeavesDistancesUnchanged) {
  auto p = testutil::gaussian("P", 8, 6, 0.0, 4);
  auto s = testutil::gaussian("S", 5, 6, 2.0, 5);
  auto r = project_pair(p, s, 4);
  Matrix flipped = r.projected_primary;
  flipped.col(1) *= -1.0;
  Matrix flipped_s = r.projected_secondary;
  flipped_s.col(1) *= -1.0;
  for (Eigen::Index j = 0; j < flipped_s.rows(); ++j) {
    for (Eigen::Index k = 0; k < flipped.rows(); ++k) {
      const double a = (r.projected_secondary.row(j) - r.projected_primary.row(k)).norm();
      const double b = (flipped_s.row(j) - flipped.row(k)).norm();
      EXPECT_NEAR(a, b, 1e-12);
    }
  }
}
