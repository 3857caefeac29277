#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infrashare {

enum class ErrorCode {
  kDomain,                 // argument outside a function's domain
  kInvalidParameter,       // a parameter type invariant is violated
  kBracket,                // root-finder given a non-bracketing interval
  kConvergence,            // iteration cap reached
  kDegenerateMonopoly,     // beta == 0 under monopoly pricing
  kDegenerateEquilibrium,  // beta2/beta1 == 1 - 1/eps
  kNoDriveOut,             // aggression unavailable
  kNonMonotoneThreshold,   // drive-out threshold is not a single crossing
  kExternalityBasis,       // Nash-Cournot basis requested but not viable
  kNoCap,                  // regulated sharing without a viable NE price
  kStructure,              // informed-fraction construction has no solution
  kWrongScenario,          // region layout does not fit the operation
  kConfigSyntax,
  kConfigValidation,
  kSweepSize,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace infrashare
