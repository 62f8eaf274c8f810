#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qorth {

enum class ErrorCode {
  // Invalid input: a value object or request could not be constructed.
  LengthMismatch,
  NonMonotoneEigenvalues,
  NotNormalizable,
  InvalidCount,
  NonpositiveSpacing,
  EmptyGrid,
  NonMonotoneGrid,
  InvalidParams,
  CombConstraintViolation,
  InvalidStride,
  UnsupportedQuantity,
  // Domain failures: the input is well formed but the question has no answer.
  ZeroDispersion,
  DegenerateSpectrum,
  DegenerateLevels,
  ConvergenceFailure,
  TunnelingPresent,
  NoBifurcationFound,
  UnsupportedN,
};

std::string_view to_string(ErrorCode code);

/// True for codes that describe malformed input rather than a failed computation.
bool is_usage_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qorth
