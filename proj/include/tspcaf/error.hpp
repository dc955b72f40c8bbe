#pragma once

#include <stdexcept>
#include <string>

namespace tspcaf {

enum class ErrorCode {
  MissingSection,
  UnsupportedWeightType,
  DimensionMismatch,
  MalformedLine,
  NTooSmall,
  NTooLarge,
  NotAPermutation,
  OrderViolation,
  TooLarge,
  DegreeViolation,
  TooLargeToEnumerate,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI, the Python module) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tspcaf
