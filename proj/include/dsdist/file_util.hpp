#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dsdist {

/// Whole-file read; throws Error(IoFailure).
std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temporary and renames it into place, so readers
/// never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Stages several outputs and commits them together. Nothing touches the
/// target paths until commit(); if any temporary cannot be written, the
/// already-staged temporaries are removed and no target is created.
class OutputBatch {
 public:
  OutputBatch() = default;
  OutputBatch(const OutputBatch&) = delete;
  OutputBatch& operator=(const OutputBatch&) = delete;
  ~OutputBatch();

  void add(std::filesystem::path path, std::string contents);
  void commit();

 private:
  void discard_temporaries() noexcept;

  std::vector<std::pair<std::filesystem::path, std::string>> pending_;
  std::vector<std::filesystem::path> temporaries_;
};

}  // namespace dsdist
