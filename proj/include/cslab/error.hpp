#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cslab {

enum class ErrorCode {
  kDimensionMismatch,
  kPoleOnCircle,
  kInvalidParameter,
  kConstraintViolation,
  kFamilyUnavailable,
  kNewtonDivergence,
  kInfeasibleSign,
  kEigensolveFailure,
  kNumericalAliasing,
  kSingularSystem,
  kBlowupDetected,
  kUnderResolved,
  kNotATravelingWave,
  kBasisDrift,
  kInconclusive,
  kIoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> residual = std::nullopt);

  ErrorCode code() const { return code_; }
  // Residual or measured value attached to numerical failures.
  std::optional<double> residual() const { return residual_; }

 private:
  ErrorCode code_;
  std::optional<double> residual_;
};

enum class WarningCode {
  kTruncationOverflow,
  kAliasWarning,
  kOutsideTheory,
  kStepAdvisory,
};

const char* to_string(WarningCode code);

struct Warning {
  WarningCode code;
  std::string message;
  double value = 0.0;
};

using Warnings = std::vector<Warning>;

inline void warn(Warnings* sink, WarningCode code, std::string message, double value) {
  if (sink != nullptr) sink->push_back({code, std::move(message), value});
}

}  // namespace cslab
