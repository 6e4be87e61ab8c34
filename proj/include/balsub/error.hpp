#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace balsub {

enum class ErrorKind {
  InvalidInput,
  DimensionMismatch,
  NumericalFailure,
  NotTransversal,
  NonGeneric,
  InvalidA,
  SamplingFailure,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NotTransversal: return "NotTransversal";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::InvalidA: return "InvalidA";
    case ErrorKind::SamplingFailure: return "SamplingFailure";
  }
  return "Unknown";
}

/// Typed failure raised by every operation whose precondition does not hold.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace balsub
