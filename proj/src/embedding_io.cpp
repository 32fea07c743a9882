#include "dsdist/embedding_io.hpp"

#include "dsdist/error.hpp"
#include "dsdist/file_util.hpp"
#include "dsdist/format.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>

namespace dsdist {

namespace {

static_assert(std::numeric_limits<double>::is_iec559, "FVEC1 stores IEEE-754 binary64");

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

void put_f64(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return v;
}

double get_f64(std::string_view bytes, std::size_t offset) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::IoFailure, std::string(what) + " exceeds the u32 range of FVEC1");
  }
  return static_cast<std::uint32_t>(v);
}

// Splits one CSV record starting at `pos`; advances pos past the line end.
std::vector<std::string> next_record(std::string_view text, std::size_t& pos, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  while (pos < text.size()) {
    char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
          continue;
        }
        quoted = false;
        ++pos;
        continue;
      }
      field.push_back(c);
      ++pos;
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
      ++pos;
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
      ++pos;
      continue;
    }
    if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      fields.push_back(std::move(field));
      return fields;
    }
    field.push_back(c);
    ++pos;
  }
  if (quoted) {
    throw Error(ErrorCode::ParseFailure, "unterminated quote on line " + std::to_string(line_no));
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_blank(std::string_view text, std::size_t pos) {
  for (; pos < text.size(); ++pos) {
    if (text[pos] != '\n' && text[pos] != '\r' && text[pos] != ' ' && text[pos] != '\t') return false;
  }
  return true;
}

}  // namespace

std::string encode_fvec(const FeatureMatrix& matrix) {
  std::string ids = "#" + matrix.dataset_id() + "\n";
  for (const auto& id : matrix.image_ids()) ids += id + "\n";

  const auto& values = matrix.values();
  if (!values.allFinite()) throw Error(ErrorCode::NonFinite, "refusing to write NaN or Inf");

  std::string out;
  out.reserve(fvec1::kHeaderSize + ids.size() + 8 * static_cast<std::size_t>(values.size()));
  out.append(reinterpret_cast<const char*>(fvec1::kMagic.data()), fvec1::kMagic.size());
  out.push_back(static_cast<char>(fvec1::kVersion));
  out.push_back('\0');
  put_u32(out, checked_u32(matrix.rows(), "row count"));
  put_u32(out, checked_u32(matrix.cols(), "column count"));
  put_u32(out, checked_u32(ids.size(), "id block"));
  out += ids;
  // Row-major storage, so data() is already in file order.
  const double* data = values.data();
  for (Eigen::Index i = 0; i < values.size(); ++i) put_f64(out, data[i]);
  return out;
}

FeatureMatrix decode_fvec(std::string_view bytes) {
  if (bytes.size() < fvec1::kMagic.size() ||
      std::memcmp(bytes.data(), fvec1::kMagic.data(), fvec1::kMagic.size()) != 0) {
    throw Error(ErrorCode::BadMagic, "missing SIMFV1 magic");
  }
  if (bytes.size() < fvec1::kHeaderSize) {
    throw Error(ErrorCode::TruncatedFile, "header is shorter than 20 bytes");
  }
  if (static_cast<std::uint8_t>(bytes[6]) != fvec1::kVersion) {
    throw Error(ErrorCode::UnsupportedVersion,
                "version " + std::to_string(static_cast<unsigned char>(bytes[6])));
  }
  const std::uint64_t rows = get_u32(bytes, 8);
  const std::uint64_t cols = get_u32(bytes, 12);
  const std::uint64_t id_len = get_u32(bytes, 16);
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::DimensionZero, "header declares " + std::to_string(rows) + "x" +
                                              std::to_string(cols));
  }
  // rows, cols < 2^32 so the product fits in 64 bits; the byte count may not.
  const std::uint64_t count = rows * cols;
  if (count > (std::numeric_limits<std::uint64_t>::max() - fvec1::kHeaderSize - id_len) / 8) {
    throw Error(ErrorCode::TruncatedFile, "declared payload exceeds addressable size");
  }
  const std::uint64_t expected = fvec1::kHeaderSize + id_len + 8 * count;
  if (bytes.size() < expected) {
    throw Error(ErrorCode::TruncatedFile, "declared " + std::to_string(rows) + "x" +
                                              std::to_string(cols) + " needs " +
                                              std::to_string(expected) + " bytes, file has " +
                                              std::to_string(bytes.size()));
  }
  if (bytes.size() > expected) {
    throw Error(ErrorCode::TrailingBytes,
                std::to_string(bytes.size() - expected) + " bytes after the payload");
  }

  std::string_view block = bytes.substr(fvec1::kHeaderSize, id_len);
  std::vector<std::string> lines;
  while (!block.empty()) {
    auto nl = block.find('\n');
    if (nl == std::string_view::npos) {
      lines.emplace_back(block);
      break;
    }
    lines.emplace_back(block.substr(0, nl));
    block.remove_prefix(nl + 1);
  }
  if (lines.empty() || lines.front().empty() || lines.front().front() != '#') {
    throw Error(ErrorCode::ParseFailure, "id block must start with '#<dataset_id>'");
  }
  if (lines.size() != rows + 1) {
    throw Error(ErrorCode::ParseFailure, "id block holds " + std::to_string(lines.size() - 1) +
                                             " image ids for " + std::to_string(rows) + " rows");
  }
  std::string dataset_id = lines.front().substr(1);
  lines.erase(lines.begin());

  Matrix values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t offset = fvec1::kHeaderSize + id_len;
  double* data = values.data();
  for (std::uint64_t i = 0; i < count; ++i, offset += 8) data[i] = get_f64(bytes, offset);

  return FeatureMatrix(std::move(dataset_id), std::move(lines), std::move(values));
}

FeatureMatrix read_fvec(const std::filesystem::path& path) {
  return decode_fvec(read_file(path));
}

void write_fvec(const FeatureMatrix& matrix, const std::filesystem::path& path) {
  write_file_atomic(path, encode_fvec(matrix));
}

FeatureMatrix parse_csv(std::string_view text, bool has_header, std::string dataset_id) {
  std::size_t pos = 0;
  std::size_t line_no = 1;
  bool id_column = false;
  std::size_t width = 0;

  if (has_header) {
    if (is_blank(text, 0)) throw Error(ErrorCode::DimensionZero, "empty CSV");
    auto header = next_record(text, pos, line_no++);
    id_column = !header.empty() && trim(header.front()) == "id";
    width = header.size();
  }

  std::vector<std::string> ids;
  std::vector<double> flat;
  std::size_t rows = 0;
  while (!is_blank(text, pos)) {
    auto record = next_record(text, pos, line_no);
    if (width == 0) width = record.size();
    if (record.size() != width) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(record.size()) + " fields, expected " +
                                             std::to_string(width));
    }
    std::size_t first = 0;
    if (id_column) {
      ids.emplace_back(trim(record.front()));
      first = 1;
    }
    for (std::size_t c = first; c < record.size(); ++c) {
      double v = 0.0;
      if (!parse_number(record[c], v)) {
        throw Error(ErrorCode::ParseFailure, "line " + std::to_string(line_no) + ": '" +
                                                 record[c] + "' is not a number");
      }
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "line " + std::to_string(line_no) + " holds NaN or Inf");
      }
      flat.push_back(v);
    }
    ++rows;
    ++line_no;
  }

  const std::size_t cols = id_column ? width - 1 : width;
  if (rows == 0 || cols == 0) throw Error(ErrorCode::DimensionZero, "CSV holds no values");
  Matrix values = Eigen::Map<Matrix>(flat.data(), static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(cols));
  if (!id_column) ids = FeatureMatrix::synthetic_ids(rows);
  return FeatureMatrix(std::move(dataset_id), std::move(ids), std::move(values));
}

FeatureMatrix read_csv(const std::filesystem::path& path, bool has_header) {
  return parse_csv(read_file(path), has_header, path.stem().string());
}

std::vector<std::string> csv_header(std::string_view text) {
  std::size_t pos = 0;
  if (is_blank(text, 0)) throw Error(ErrorCode::DimensionZero, "empty CSV");
  auto cells = next_record(text, pos, 1);
  for (auto& c : cells) c = std::string(trim(c));
  return cells;
}

std::string format_csv(const FeatureMatrix& matrix) {
  std::string out = "id";
  for (std::size_t c = 0; c < matrix.cols(); ++c) out += ",f" + std::to_string(c);
  out += '\n';
  const auto& values = matrix.values();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out += csv_field(matrix.image_ids()[r]);
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      out += ',';
      out += format_double(values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
    out += '\n';
  }
  return out;
}

FeatureMatrix load_matrix(const std::filesystem::path& path) {
  if (path.extension() != ".csv") return read_fvec(path);
  auto text = read_file(path);
  std::size_t pos = 0;
  bool header = false;
  if (!is_blank(text, 0)) {
    for (const auto& field : next_record(text, pos, 1)) {
      double v = 0.0;
      if (!parse_number(field, v)) {
        header = true;
        break;
      }
    }
  }
  return parse_csv(text, header, path.stem().string());
}

}  // namespace dsdist
