#include "dsdist/distance.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

using namespace dsdist;
using testutil::features;
using testutil::from_rows;
using testutil::to_rows;

TEST(Pairwise, ThreeFourFive) {
  auto d = pairwise(from_rows({{0, 0}, {3, 4}}), from_rows({{0, 0}, {6, 8}}));
  EXPECT_EQ(to_rows(d), (oracle::Rows{{0, 10}, {5, 5}}));
}

TEST(Pairwise, SelfDistanceDiagonalIsZero) {
  std::mt19937_64 rng(1);
  auto a = testutil::random_matrix(rng, 9, 4);
  auto d = pairwise(a, a);
  for (Eigen::Index i = 0; i < d.rows(); ++i) EXPECT_EQ(d(i, i), 0.0);
  EXPECT_GE(d.minCoeff(), 0.0);
}

TEST(Pairwise, MatchesDoubleLoopOracle) {
  std::mt19937_64 rng(2);
  auto s = testutil::random_matrix(rng, 7, 3);
  auto p = testutil::random_matrix(rng, 5, 3);
  auto got = to_rows(pairwise(s, p));
  auto want = oracle::pairwise(to_rows(s), to_rows(p));
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(got[j][k], want[j][k], 1e-12);

  auto rows = image_distances(from_rows(got));
  const double o = dataset_distance(rows);
  EXPECT_NEAR(o, oracle::mean(oracle::row_sums(want)), 1e-12);
}

TEST(Pairwise, TransposeSymmetry) {
  std::mt19937_64 rng(3);
  auto s = testutil::random_matrix(rng, 6, 4);
  auto p = testutil::random_matrix(rng, 8, 4);
  Matrix sp = pairwise(s, p);
  Matrix ps = pairwise(p, s);
  EXPECT_LE((sp - ps.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pairwise, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 rng(4);
  auto s = testutil::random_matrix(rng, 37, 5);
  auto p = testutil::random_matrix(rng, 23, 5);
  Matrix one = pairwise(s, p, 1);
  for (unsigned t : {2u, 3u, 8u, 64u}) {
    Matrix many = pairwise(s, p, t);
    EXPECT_EQ(std::memcmp(one.data(), many.data(), sizeof(double) * static_cast<std::size_t>(one.size())), 0);
  }
}

TEST(Pairwise, DimensionMismatch) {
  EXPECT_ERROR(pairwise(Matrix::Zero(2, 3), Matrix::Zero(2, 2)), DimensionMismatch);
}

TEST(ImageDistances, RowSums) {
  EXPECT_EQ(image_distances(from_rows({{0, 10}, {5, 5}})), (std::vector<double>{10, 10}));
  EXPECT_EQ(image_distances(from_rows({{7}})), (std::vector<double>{7}));
  EXPECT_EQ(image_distances(Matrix::Zero(3, 4)), (std::vector<double>{0, 0, 0}));
}

TEST(DatasetDistance, Mean) {
  EXPECT_EQ(dataset_distance(std::vector<double>{10, 10}), 10.0);
  EXPECT_EQ(dataset_distance(std::vector<double>{1, 2, 3}), 2.0);
  EXPECT_ERROR(dataset_distance(std::vector<double>{}), EmptyInput);
}

TEST(ComputeDistance, ReportInvariants) {
  auto p = testutil::gaussian("P", 12, 8, 0.0, 10);
  auto s = testutil::gaussian("S", 9, 8, 1.0, 11);
  auto r = compute_distance(p, s, 5);
  EXPECT_EQ(r.primary_id, "P");
  EXPECT_EQ(r.secondary_id, "S");
  EXPECT_EQ(r.primary_rows, 12u);
  EXPECT_EQ(r.components, 5u);
  EXPECT_EQ(r.image_ids, s.image_ids());
  ASSERT_EQ(r.matrix.rows(), 9);
  ASSERT_EQ(r.matrix.cols(), 12);
  EXPECT_GE(r.matrix.minCoeff(), 0.0);
  for (Eigen::Index j = 0; j < r.matrix.rows(); ++j) {
    EXPECT_NEAR(r.image_distances[static_cast<std::size_t>(j)], r.matrix.row(j).sum(),
                1e-9 * r.matrix.row(j).sum());
  }
  EXPECT_EQ(r.dataset_distance, dataset_distance(r.image_distances));
}

TEST(ComputeDistance, MatchesOraclePipeline) {
  std::mt19937_64 rng(30);
  for (int t = 0; t < 5; ++t) {
    const std::size_t n = 5 + rng() % 20, m = 5 + rng() % 20, q = 3 + rng() % 6;
    FeatureMatrix p("P", FeatureMatrix::synthetic_ids(n), testutil::random_matrix(rng, n, q));
    FeatureMatrix s("S", FeatureMatrix::synthetic_ids(m), testutil::random_matrix(rng, m, q, 2.0));
    const std::size_t z = 1 + rng() % q;
    auto r = compute_distance(p, s, z);

    auto [centered, mean] = oracle::center(to_rows(p.values()), to_rows(s.values()));
    auto y = oracle::pca_project(centered, z);
    oracle::Rows pl(y.begin(), y.begin() + static_cast<long>(n));
    oracle::Rows sl(y.begin() + static_cast<long>(n), y.end());
    auto want = oracle::row_sums(oracle::pairwise(sl, pl));
    for (std::size_t j = 0; j < m; ++j) EXPECT_NEAR(r.image_distances[j], want[j], 1e-9 * want[j]);
  }
}

TEST(ComputeDistance, ScaleCovariance) {
  std::mt19937_64 rng(6);
  auto sp = testutil::random_matrix(rng, 7, 3);
  auto pp = testutil::random_matrix(rng, 6, 3);
  const double c = 3.75;
  auto base = image_distances(pairwise(sp, pp));
  auto scaled = image_distances(pairwise(Matrix(sp * c), Matrix(pp * c)));
  for (std::size_t j = 0; j < base.size(); ++j) EXPECT_NEAR(scaled[j], c * base[j], 1e-12 * c * base[j]);
  EXPECT_NEAR(dataset_distance(scaled), c * dataset_distance(base), 1e-12 * c * dataset_distance(base));
}

TEST(NormalizeRows, Examples) {
  auto n = normalize_rows(from_rows({{1, 1, 2}, {0, 0, 0}}));
  EXPECT_EQ(to_rows(n.values)[0], (std::vector<double>{0.25, 0.25, 0.5}));
  EXPECT_EQ(to_rows(n.values)[1], (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(n.zero_rows, (std::vector<bool>{false, true}));
}

TEST(NormalizeRows, TableRowSumsToOneAndFarthestTwo) {
  const std::vector<double> unetpp = {0.056, 0.069, 0.063, 0.054, 0.465, 0.293};
  double sum = 0.0;
  for (double v : unetpp) sum += v;
  EXPECT_NEAR(sum, 1.0, 5e-3);

  Matrix raw(1, 6);
  for (int i = 0; i < 6; ++i) raw(0, i) = unetpp[static_cast<std::size_t>(i)];
  auto table = make_distance_table({"UNet++"}, {"S1", "S2", "S3", "S4", "S5", "S6"}, raw);
  EXPECT_NEAR(table.normalized.row(0).sum(), 1.0, 1e-12);

  std::vector<RankedDataset> entries;
  for (int i = 0; i < 6; ++i) entries.push_back({table.column_labels[static_cast<std::size_t>(i)], table.normalized(0, i)});
  auto ranking = rank_by_distance("UNet++", entries);
  auto far = ranking.farthest(2);
  ASSERT_EQ(far.size(), 2u);
  EXPECT_EQ(far[0].secondary_id, "S5");
  EXPECT_EQ(far[1].secondary_id, "S6");
}

TEST(NormalizeRows, RandomRowsSumToOneAndKeepOrder) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  Matrix raw(30, 7);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = u(rng);
  auto n = normalize_rows(raw);
  for (Eigen::Index r = 0; r < raw.rows(); ++r) {
    EXPECT_NEAR(n.values.row(r).sum(), 1.0, 1e-12);
    for (Eigen::Index a = 0; a < raw.cols(); ++a)
      for (Eigen::Index b = 0; b < raw.cols(); ++b)
        if (raw(r, a) < raw(r, b)) EXPECT_LE(n.values(r, a), n.values(r, b));
  }
}

TEST(DistanceTableTest, Validation) {
  EXPECT_ERROR(make_distance_table({"a"}, {"x"}, Matrix::Zero(1, 2)), LengthMismatch);
  EXPECT_ERROR(make_distance_table({"a", "b"}, {"x"}, Matrix::Zero(1, 1)), LengthMismatch);
  EXPECT_ERROR(make_distance_table({"a"}, {"x"}, from_rows({{-1.0}})), NonFinite);
}

TEST(PcSweep, ExactRankPlateau) {
  std::mt19937_64 rng(40);
  Matrix left = testutil::random_matrix(rng, 30, 2);
  Matrix right = testutil::random_matrix(rng, 2, 8);
  Matrix all = left * right;
  FeatureMatrix p("P", FeatureMatrix::synthetic_ids(18), all.topRows(18));
  FeatureMatrix s("S", FeatureMatrix::synthetic_ids(12), all.bottomRows(12));
  const std::vector<std::size_t> zs = {1, 2, 3, 4};
  auto rows = pc_sweep(p, s, zs);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_FALSE(rows[0].delta.has_value());
  for (std::size_t i = 2; i < 4; ++i) {
    EXPECT_NEAR(rows[i].dataset_distance, rows[1].dataset_distance, 1e-9 * rows[1].dataset_distance);
    ASSERT_TRUE(rows[i].delta.has_value());
    EXPECT_NEAR(*rows[i].delta, std::abs(rows[i].dataset_distance - rows[i - 1].dataset_distance), 0.0);
  }
}

TEST(PcSweep, SingleRowEqualsDefaultPipeline) {
  auto p = testutil::gaussian("P", 20, 30, 0.0, 1);
  auto s = testutil::gaussian("S", 15, 30, 0.5, 2);
  const std::vector<std::size_t> zs = {25};
  auto rows = pc_sweep(p, s, zs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].dataset_distance, compute_distance(p, s).dataset_distance);
}

TEST(PcSweep, Validation) {
  auto p = testutil::gaussian("P", 3, 4, 0.0, 1);
  auto s = testutil::gaussian("S", 3, 4, 0.0, 2);
  const std::vector<std::size_t> too_many = {5};
  EXPECT_ERROR(pc_sweep(p, s, too_many), TooManyComponents);
  EXPECT_ERROR(pc_sweep(p, s, std::vector<std::size_t>{}), EmptyInput);
}

namespace {

DistanceReport fake_report(const std::string& primary, const std::string& secondary, std::vector<double> dists,
                           std::vector<std::string> ids = {}) {
  DistanceReport r;
  r.primary_id = primary;
  r.secondary_id = secondary;
  r.image_distances = std::move(dists);
  if (ids.empty()) {
    for (std::size_t i = 0; i < r.image_distances.size(); ++i) ids.push_back("img" + std::to_string(i));
  }
  r.image_ids = std::move(ids);
  r.dataset_distance = dataset_distance(r.image_distances);
  return r;
}

}  // namespace

TEST(RankDatasets, AscendingWithSlices) {
  std::vector<DistanceReport> reports = {fake_report("P", "S1", {0.2}), fake_report("P", "S2", {0.5}),
                                         fake_report("P", "S3", {0.1})};
  auto ranking = rank_datasets(reports);
  ASSERT_EQ(ranking.ascending.size(), 3u);
  EXPECT_EQ(ranking.ascending[0].secondary_id, "S3");
  EXPECT_EQ(ranking.ascending[1].secondary_id, "S1");
  EXPECT_EQ(ranking.ascending[2].secondary_id, "S2");
  EXPECT_EQ(ranking.closest(1)[0].secondary_id, "S3");
  EXPECT_EQ(ranking.farthest(1)[0].secondary_id, "S2");
  EXPECT_EQ(ranking.closest(10).size(), 3u);
}

TEST(RankDatasets, TiesOrderedByLabel) {
  std::vector<DistanceReport> reports = {fake_report("P", "b", {1.0}), fake_report("P", "a", {1.0})};
  auto ranking = rank_datasets(reports);
  EXPECT_EQ(ranking.ascending[0].secondary_id, "a");
  EXPECT_EQ(ranking.ascending[1].secondary_id, "b");
}

TEST(RankDatasets, Errors) {
  std::vector<DistanceReport> mixed = {fake_report("P", "a", {1.0}), fake_report("Q", "b", {2.0})};
  EXPECT_ERROR(rank_datasets(mixed), MixedPrimary);
  EXPECT_ERROR(rank_datasets(std::span<const DistanceReport>{}), EmptyInput);
}

TEST(RankDatasets, OrderSurvivesPositiveScaling) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<DistanceReport> base, scaled;
  for (int i = 0; i < 12; ++i) {
    const double v = u(rng);
    base.push_back(fake_report("P", "S" + std::to_string(i), {v}));
    scaled.push_back(fake_report("P", "S" + std::to_string(i), {v * 2.5}));
  }
  auto a = rank_datasets(base), b = rank_datasets(scaled);
  for (std::size_t i = 0; i < a.ascending.size(); ++i) EXPECT_EQ(a.ascending[i].secondary_id, b.ascending[i].secondary_id);
}

TEST(ExtremeImages, SmallExample) {
  auto r = fake_report("P", "S", {5, 1, 3}, {"id0", "id1", "id2"});
  auto e = extreme_images(r, 1);
  EXPECT_EQ(e.closest, (std::vector<std::string>{"id1"}));
  EXPECT_EQ(e.farthest, (std::vector<std::string>{"id0"}));
  EXPECT_ERROR(extreme_images(r, 4), KTooLarge);
}

TEST(ExtremeImages, FullKIsPermutation) {
  auto r = fake_report("P", "S", {2, 2, 1, 4});
  auto e = extreme_images(r, 4);
  auto a = e.closest, b = e.farthest;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, r.image_ids);
  EXPECT_EQ(b, r.image_ids);
}

TEST(ExtremeImages, AgreesWithSortOracle) {
  std::mt19937_64 rng(50);
  std::uniform_int_distribution<int> u(0, 20);  // small range forces ties
  std::vector<double> d;
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) {
    d.push_back(u(rng));
    char buf[16];
    std::snprintf(buf, sizeof buf, "im%02d", 49 - i);
    ids.emplace_back(buf);
  }
  auto r = fake_report("P", "S", d, ids);
  auto e = extreme_images(r, 7);

  std::vector<std::pair<double, std::string>> pairs;
  for (std::size_t i = 0; i < d.size(); ++i) pairs.emplace_back(d[i], ids[i]);
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(e.closest[i], pairs[i].second);
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(e.farthest[i], pairs[i].second);
}
