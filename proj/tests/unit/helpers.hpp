#pragma once

#include "dsdist/error.hpp"
#include "dsdist/feature_matrix.hpp"
#include "dsdist/synth.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testutil {

// Name of the dsdist::Error raised by f, or "<none>".
template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const dsdist::Error& e) {
    return std::string(e.name());
  }
  return "<none>";
}

#define EXPECT_ERROR(stmt, code) EXPECT_EQ(::testutil::error_of([&] { stmt; }), #code)

inline dsdist::Matrix from_rows(const oracle::Rows& rows) {
  dsdist::Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

inline oracle::Rows to_rows(const dsdist::Matrix& m) {
  oracle::Rows rows(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return rows;
}

inline dsdist::FeatureMatrix features(const std::string& id, const oracle::Rows& rows) {
  return dsdist::FeatureMatrix(id, dsdist::FeatureMatrix::synthetic_ids(rows.size(), id + "_"), from_rows(rows));
}

inline dsdist::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  dsdist::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

inline dsdist::FeatureMatrix gaussian(const std::string& id, std::size_t rows, std::size_t dims, double shift,
                                      std::uint64_t seed) {
  dsdist::SynthSpec spec;
  spec.rows = rows;
  spec.dims = dims;
  spec.shift = shift;
  spec.seed = seed;
  spec.dataset_id = id;
  return dsdist::generate(spec);
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("dsdist_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
