#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ivord {

enum class ErrorCode {
  InvalidInterval,
  DegenerateInterval,
  TooManyClasses,
  ZeroVariance,
  ShapeMismatch,
  EmptyGrid,
  InvalidParameter,
  NotSymmetric,
  NumericalFailure,
  FitFailed,
  EmptySplit,
  SingularCovariance,
  DegenerateKernel,
  SplitFailed,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` discriminates the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ivord
