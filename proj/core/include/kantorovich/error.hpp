#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kantorovich {

enum class ErrorCode {
  IndexOutOfRange,
  ShapeMismatch,
  NotOnSimplex,
  MismatchedSpaces,
  InvalidMetric,
  InvalidMeasure,
  InvalidArgument,
  SizeOverflow,
  NotUniformFibers,
  NotRational,
  DenominatorTooLarge,
  LipschitzViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every precondition failure in the library surfaces as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kantorovich
