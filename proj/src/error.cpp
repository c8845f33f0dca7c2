#include "sgm/error.hpp"

namespace sgm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDanglingFace: return "DanglingFace";
    case ErrorCode::kDuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::kDegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kSingularBlock: return "SingularBlock";
    case ErrorCode::kConstraintViolated: return "ConstraintViolated";
    case ErrorCode::kInfeasibleStart: return "InfeasibleStart";
    case ErrorCode::kNonpositiveCurvatureTrace: return "NonpositiveCurvatureTrace";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kDegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::kZeroTruthNorm: return "ZeroTruthNorm";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sgm
