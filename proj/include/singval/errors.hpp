#pragma once

#include <stdexcept>
#include <string>

namespace singval {

enum class ErrorKind {
  NotDivisible,
  EmptyResultWindow,
  WindowNotCovered,
  PrecisionExhausted,
  ZeroDivisor,
  BoundSearchExceeded,
  NotContained,
  ClipRuleViolation,
  BadReduction,
  EnumerationTooLarge,
  InvalidInput,
  Overflow,
  Unsupported,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the engine carries a machine-readable kind so the
// CLI can map it onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The description without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace singval
