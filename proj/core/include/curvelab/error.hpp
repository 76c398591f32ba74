#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvelab {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedSurface,
  WrongSurface,
  EmptyAfterReduction,
  NotSimple,
  BudgetExceeded,
  NumericDegeneracy,
  NotHyperbolic,
  BoundaryClass,
  Uncertified,
  TangentAxes,
  SearchExhausted,
  RejectionStalled,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class CurveLabError : public std::runtime_error {
 public:
  CurveLabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw CurveLabError(code, what); }

}  // namespace curvelab
