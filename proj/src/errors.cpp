#include "infrashare/errors.hpp"

namespace infrashare {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kBracket: return "bracket";
    case ErrorCode::kConvergence: return "convergence";
    case ErrorCode::kDegenerateMonopoly: return "degenerate-monopoly";
    case ErrorCode::kDegenerateEquilibrium: return "degenerate-equilibrium";
    case ErrorCode::kNoDriveOut: return "no-drive-out";
    case ErrorCode::kNonMonotoneThreshold: return "non-monotone-threshold";
    case ErrorCode::kExternalityBasis: return "externality-basis";
    case ErrorCode::kNoCap: return "no-cap";
    case ErrorCode::kStructure: return "structure";
    case ErrorCode::kWrongScenario: return "wrong-scenario";
    case ErrorCode::kConfigSyntax: return "config-syntax";
    case ErrorCode::kConfigValidation: return "config-validation";
    case ErrorCode::kSweepSize: return "sweep-size";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace infrashare
