#include "dsdist/synth.hpp"

#include "dsdist/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace dsdist {

SynthKind parse_synth_kind(const std::string& name) {
  if (name == "gaussian" || name == "gaussian-shifted") return SynthKind::GaussianShifted;
  if (name == "low-rank") return SynthKind::LowRank;
  if (name == "two-cluster") return SynthKind::TwoCluster;
  throw Error(ErrorCode::BadSpec, "unknown generator kind '" + name + "'");
}

std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::GaussianShifted: return "gaussian";
    case SynthKind::LowRank: return "low-rank";
    case SynthKind::TwoCluster: return "two-cluster";
  }
  return "unknown";
}

double NormalStream::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(angle);
  has_cached_ = true;
  return r * std::cos(angle);
}

FeatureMatrix generate(const SynthSpec& spec) {
  if (spec.rows == 0 || spec.dims == 0) throw Error(ErrorCode::BadSpec, "rows and dims must be positive");
  if (!std::isfinite(spec.noise) || spec.noise < 0.0) {
    throw Error(ErrorCode::BadSpec, "noise must be finite and >= 0");
  }
  if (!std::isfinite(spec.shift)) throw Error(ErrorCode::BadSpec, "shift must be finite");
  if (!spec.shift_vector.empty() && spec.shift_vector.size() != spec.dims) {
    throw Error(ErrorCode::BadSpec, "shift vector length differs from dims");
  }
  if (spec.kind == SynthKind::LowRank &&
      (spec.rank == 0 || spec.rank > std::min(spec.rows, spec.dims))) {
    throw Error(ErrorCode::BadSpec, "rank must lie in [1, min(rows, dims)]");
  }

  const auto n = static_cast<Eigen::Index>(spec.rows);
  const auto q = static_cast<Eigen::Index>(spec.dims);
  Vector shift = Vector::Constant(q, spec.shift);
  if (!spec.shift_vector.empty()) {
    shift = Eigen::Map<const Vector>(spec.shift_vector.data(), q);
  }
  if (!shift.allFinite()) throw Error(ErrorCode::BadSpec, "shift must be finite");

  NormalStream normal(spec.seed);
  auto fill = [&](Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = normal.next();
    }
  };

  Matrix values(n, q);
  switch (spec.kind) {
    case SynthKind::GaussianShifted:
      fill(values);
      values.rowwise() += shift.transpose();
      break;
    case SynthKind::TwoCluster: {
      fill(values);
      const Eigen::Index upper = (n + 1) / 2;
      values.topRows(upper).rowwise() += shift.transpose();
      values.bottomRows(n - upper).rowwise() -= shift.transpose();
      break;
    }
    case SynthKind::LowRank: {
      const auto r = static_cast<Eigen::Index>(spec.rank);
      Matrix left(n, r), right(r, q), noise(n, q);
      fill(left);
      fill(right);
      fill(noise);
      values = left * right + spec.noise * noise;
      break;
    }
  }

  std::vector<std::string> ids;
  ids.reserve(spec.rows);
  char buf[32];
  for (std::size_t i = 0; i < spec.rows; ++i) {
    std::snprintf(buf, sizeof buf, "_%04zu", i);
    ids.push_back(spec.dataset_id + buf);
  }
  return FeatureMatrix(spec.dataset_id, std::move(ids), std::move(values));
}

}  // namespace dsdist
