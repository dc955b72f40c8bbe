#include "tspcaf/error.hpp"

namespace tspcaf {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::UnsupportedWeightType: return "UnsupportedWeightType";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::NTooLarge: return "NTooLarge";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tspcaf
