#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moq {

enum class ErrorKind {
  NonPositiveParameter,
  LengthMismatch,
  DomainError,
  ConditionViolated,
  Nonconvergence,
  SurvivalUnderflow,
  EnvelopeViolation,
  ToleranceNotMet,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::Nonconvergence: return "Nonconvergence";
    case ErrorKind::SurvivalUnderflow: return "SurvivalUnderflow";
    case ErrorKind::EnvelopeViolation: return "EnvelopeViolation";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace moq
