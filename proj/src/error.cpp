#include "qorth/error.hpp"

namespace qorth {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonMonotoneEigenvalues: return "NonMonotoneEigenvalues";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::NonpositiveSpacing: return "NonpositiveSpacing";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NonMonotoneGrid: return "NonMonotoneGrid";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::CombConstraintViolation: return "CombConstraintViolation";
    case ErrorCode::InvalidStride: return "InvalidStride";
    case ErrorCode::UnsupportedQuantity: return "UnsupportedQuantity";
    case ErrorCode::ZeroDispersion: return "ZeroDispersion";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DegenerateLevels: return "DegenerateLevels";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TunnelingPresent: return "TunnelingPresent";
    case ErrorCode::NoBifurcationFound: return "NoBifurcationFound";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
  }
  return "Unknown";
}

bool is_usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDispersion:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::DegenerateLevels:
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::TunnelingPresent:
    case ErrorCode::NoBifurcationFound:
    case ErrorCode::UnsupportedN:
      return false;
    default:
      return true;
  }
}

}  // namespace qorth
