#pragma once

#include "dsdist/feature_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dsdist {

enum class SynthKind { GaussianShifted, LowRank, TwoCluster };

/// Recipe for a seeded synthetic feature matrix.
///
///   GaussianShifted  row = N(0, I) + shift
///   LowRank          (n x rank of N(0,1)) * (rank x q of N(0,1)) + noise * N(0, I)
///   TwoCluster       first ceil(n/2) rows N(0, I) + shift, the rest N(0, I) - shift
///
/// `shift` is the per-coordinate shift vector when `shift_vector` is set,
/// otherwise every coordinate is shifted by the scalar `shift`.
struct SynthSpec {
  std::size_t rows = 0;
  std::size_t dims = 0;
  SynthKind kind = SynthKind::GaussianShifted;
  double shift = 0.0;
  std::vector<double> shift_vector;
  std::size_t rank = 1;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string dataset_id = "synth";
};

/// Parses "gaussian", "low-rank" or "two-cluster"; BadSpec otherwise.
SynthKind parse_synth_kind(const std::string& name);
std::string to_string(SynthKind kind);

/// Deterministic standard normals from std::mt19937_64.
///
/// Uniforms take the top 53 bits of one 64-bit draw, u = (x >> 11) * 2^-53,
/// which lies in [0, 1). Normals come in Box-Muller pairs:
///   r = sqrt(-2 ln(1 - u1)), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2)
/// with z0 returned first and z1 cached for the next call. mt19937_64's output
/// sequence is fixed by the C++ standard, so the stream is reproducible in any
/// language that implements MT19937-64 and the same transform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double uniform();
  double next();

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Image ids are "<dataset_id>_0000", "<dataset_id>_0001", ...
/// Errors: BadSpec (zero size, rank outside [1, min(rows, dims)], negative or
/// non-finite noise/shift, shift_vector of the wrong length).
FeatureMatrix generate(const SynthSpec& spec);

}  // namespace dsdist
