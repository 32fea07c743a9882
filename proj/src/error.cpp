#include "dsdist/error.hpp"

namespace dsdist {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::TrailingBytes: return "TrailingBytes";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionZero: return "DimensionZero";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooManyComponents: return "TooManyComponents";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MixedPrimary: return "MixedPrimary";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::ZeroWindow: return "ZeroWindow";
    case ErrorCode::BadBand: return "BadBand";
    case ErrorCode::InsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
    case ErrorCode::BadThresholds: return "BadThresholds";
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace dsdist
