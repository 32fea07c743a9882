#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsdist {

enum class ErrorCode {
  // embedding_io
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  TrailingBytes,
  NonFinite,
  DimensionZero,
  DuplicateId,
  InvalidId,
  IoFailure,
  RaggedRows,
  ParseFailure,
  // projection / distance
  DimensionMismatch,
  TooManyComponents,
  EmptyInput,
  MixedPrimary,
  KTooLarge,
  // analysis
  BadK,
  LengthMismatch,
  NotSorted,
  ZeroWindow,
  BadBand,
  InsufficientCandidates,
  DegenerateScale,
  // performance
  BadHeader,
  OutOfRange,
  TruncatedPayload,
  UnsupportedMaxval,
  BadThresholds,
  MissingPair,
  // synth
  BadSpec,
  // cli
  UsageError,
};

/// Stable name of an error code, as printed on the CLI diagnostic stream.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

/// Raised when the selection band holds fewer images than requested.
class InsufficientCandidatesError : public Error {
 public:
  InsufficientCandidatesError(std::size_t candidates, std::size_t requested)
      : Error(ErrorCode::InsufficientCandidates,
              "band holds " + std::to_string(candidates) + " candidates, " +
                  std::to_string(requested) + " requested"),
        candidates_(candidates) {}

  std::size_t candidates() const noexcept { return candidates_; }

 private:
  std::size_t candidates_;
};

}  // namespace dsdist
