#include "cslab/error.hpp"

namespace cslab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPoleOnCircle: return "PoleOnCircle";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kConstraintViolation: return "ConstraintViolation";
    case ErrorCode::kFamilyUnavailable: return "FamilyUnavailable";
    case ErrorCode::kNewtonDivergence: return "NewtonDivergence";
    case ErrorCode::kInfeasibleSign: return "InfeasibleSign";
    case ErrorCode::kEigensolveFailure: return "EigensolveFailure";
    case ErrorCode::kNumericalAliasing: return "NumericalAliasing";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kBlowupDetected: return "BlowupDetected";
    case ErrorCode::kUnderResolved: return "UnderResolved";
    case ErrorCode::kNotATravelingWave: return "NotATravelingWave";
    case ErrorCode::kBasisDrift: return "BasisDrift";
    case ErrorCode::kInconclusive: return "Inconclusive";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

const char* to_string(WarningCode code) {
  switch (code) {
    case WarningCode::kTruncationOverflow: return "TruncationOverflow";
    case WarningCode::kAliasWarning: return "AliasWarning";
    case WarningCode::kOutsideTheory: return "OutsideTheory";
    case WarningCode::kStepAdvisory: return "StepAdvisory";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<double> residual)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      residual_(residual) {}

}  // namespace cslab
