#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgm {

enum class ErrorCode {
  kInvalidArgument,
  kDanglingFace,
  kDuplicateSimplex,
  kDegenerateSimplex,
  kIndexOutOfRange,
  kDimensionMismatch,
  kNotPositiveDefinite,
  kSingularBlock,
  kConstraintViolated,
  kInfeasibleStart,
  kNonpositiveCurvatureTrace,
  kEmptySample,
  kDegenerateCovariance,
  kZeroTruthNorm,
  kIoError,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (tests, the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sgm
