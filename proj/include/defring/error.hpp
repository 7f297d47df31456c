#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace defring {

enum class ErrorCode {
  CapExceeded,
  NotInvertible,
  DimensionMismatch,
  Inconclusive,
  PreconditionViolated,
  UnsupportedModule,
  InconsistentLambda,
  SizeExceeded,
  InconsistentPartition,
  AssertionFailed,
  ParseError,
  ValidationError,
  InvalidField,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnsupportedModule: return "UnsupportedModule";
    case ErrorCode::InconsistentLambda: return "InconsistentLambda";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::InconsistentPartition: return "InconsistentPartition";
    case ErrorCode::AssertionFailed: return "AssertionFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidField: return "InvalidField";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
/// `field()` names the offending input location for validation errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string field = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace defring
