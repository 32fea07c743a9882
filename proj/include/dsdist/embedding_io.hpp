#pragma once

#include "dsdist/feature_matrix.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dsdist {

// FVEC1 layout, little-endian throughout:
//
//   offset  size  field
//   0       6     magic "SIMFV1" (53 49 4D 46 56 31)
//   6       1     version = 1
//   7       1     reserved = 0
//   8       4     rows (u32)
//   12      4     cols (u32)
//   16      4     id_block_len (u32)
//   20      ...   id block, UTF-8: "#<dataset_id>\n" then one "<image_id>\n" per row
//   ...     8*rows*cols   IEEE-754 binary64 values, row-major
//
// The final id line may omit its '\n' when read; the writer always emits it.
namespace fvec1 {
inline constexpr std::array<unsigned char, 6> kMagic = {0x53, 0x49, 0x4D, 0x46, 0x56, 0x31};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 20;
}  // namespace fvec1

/// Serialize to an FVEC1 byte string.
std::string encode_fvec(const FeatureMatrix& matrix);

/// Parse an FVEC1 byte string. Any nonconforming input raises a typed Error
/// (BadMagic, UnsupportedVersion, TruncatedFile, TrailingBytes, DimensionZero,
/// ParseFailure, NonFinite, DuplicateId); nothing partial is ever returned.
FeatureMatrix decode_fvec(std::string_view bytes);

FeatureMatrix read_fvec(const std::filesystem::path& path);
void write_fvec(const FeatureMatrix& matrix, const std::filesystem::path& path);

/// Rectangular numeric CSV with '.' decimals and RFC-4180 quoting. With
/// has_header, a first header cell named "id" makes the first column the image
/// ids; otherwise ids are "row0", "row1", ... The dataset id is the file stem.
FeatureMatrix parse_csv(std::string_view text, bool has_header, std::string dataset_id);
FeatureMatrix read_csv(const std::filesystem::path& path, bool has_header);

/// Cells of the first CSV record, unquoted and trimmed.
std::vector<std::string> csv_header(std::string_view text);

/// Header row "id,f0,f1,..." followed by one row per image.
std::string format_csv(const FeatureMatrix& matrix);

/// Dispatch on extension: ".csv" goes through read_csv (header detected from
/// the first row), everything else through read_fvec.
FeatureMatrix load_matrix(const std::filesystem::path& path);

}  // namespace dsdist
