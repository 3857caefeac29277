#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "infrashare/bertrand.hpp"
#include "infrashare/cournot.hpp"
#include "infrashare/multiregion.hpp"
#include "infrashare/scenario_config.hpp"
#include "infrashare/sharing.hpp"

namespace infrashare {

struct AnalysisFailure {
  std::string analysis;
  std::string code;
  std::string message;
};

/// Best-response residuals at the equilibrium: |BR_i(q_other) - q_i|.
struct CournotDiagnostics {
  std::array<double, 2> best_response_residual{};
};

struct AggressionEntry {
  std::optional<AggressionResult> result;
  std::string error;
};

struct RegionsResult {
  bool overlapping = false;
  std::array<Outcome, 2> standalone_monopolies{};
  std::optional<RegionalOutcome> standalone;
  std::optional<RegionalOutcome> cooperation;
  std::optional<RegionalOutcome> cournot;
  std::optional<RegionalOutcome> bertrand;
};

struct ResultDocument {
  ScenarioSpec scenario;
  std::optional<std::array<Outcome, 2>> monopoly;
  std::optional<NashCournotSolution> cournot;
  std::optional<CournotDiagnostics> cournot_diagnostics;
  std::optional<std::array<AggressionEntry, 2>> aggression;
  std::optional<PayoffTable> payoff_table;
  std::optional<SharingOutcome> sharing;
  std::optional<SharingOutcome> regulated;
  std::optional<BertrandOutcome> bertrand;
  std::optional<BertrandOutcome> informed;
  std::optional<BertrandOutcome> shared_cost;
  std::optional<RegionsResult> regions;
  std::vector<std::string> warnings;
  std::vector<AnalysisFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Runs every analysis in spec.analyses. A failing analysis is recorded in
/// `failures` and the others still run. Throws only if the spec itself is
/// invalid (Error(kConfigValidation)).
ResultDocument run_analyses(const ScenarioSpec& spec);

}  // namespace infrashare
