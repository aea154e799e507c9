#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rhoc {

enum class ErrorCode {
  ParameterMismatch,
  NotAUnit,
  DimensionMismatch,
  InvalidFactor,
  InvalidPresentation,
  PresentationMismatch,
  NegativePowerOfNonInvertible,
  UnknownName,
  PairMismatch,
  ShapeMismatch,
  NotHomogeneous,
  KernelNonTrivial,
  InverseUnavailable,
  InverseInvalid,
  KoszulInconsistent,
  SigmaNotBasisExtendable,
  NonzeroDegreeFlow,
  FactorIncompatible,
  Syntax,
  Semantic,
};

std::string_view to_string(ErrorCode code);

/// Every engine failure is reported through this type; `code()` lets callers
/// tell the documented error kinds apart without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rhoc
