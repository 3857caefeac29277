#pragma once
// Scenario files: a small INI-style format.
//
//   # comment
//   [market]
//   Q = 1000
//   epsilon = 1.25
//   [sp1]
//   alpha = 50
//   beta = 2.5
//   ...
//
// The full grammar and key list are in docs/config-format.md.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infrashare/bertrand.hpp"
#include "infrashare/cournot.hpp"
#include "infrashare/multiregion.hpp"
#include "infrashare/sharing.hpp"
#include "infrashare/solver.hpp"

namespace infrashare {

enum class Analysis {
  kMonopoly,
  kCournot,
  kAggression,
  kPayoffTable,
  kSharing,
  kRegulated,
  kBertrand,
  kInformed,
  kSharedCost,
  kRegions,
};

std::string to_string(Analysis a);
/// Throws Error(kConfigValidation) for an unknown name.
Analysis parse_analysis(std::string_view name);
/// Comma-separated list; "all" expands to every analysis that needs no
/// [regions] section plus "regions" when one is given.
std::vector<Analysis> parse_analysis_list(std::string_view list, bool has_regions);

struct SweepAxis {
  std::string param;  // dotted key, e.g. "sp1.alpha"
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;  // grid points, endpoints included

  double value(int i) const;
  bool operator==(const SweepAxis&) const = default;
};

struct ScenarioSpec {
  Duopoly duopoly{{50.0, 2.5}, {100.0, 2.0}, {1000.0, 1.25}};
  std::vector<Analysis> analyses{Analysis::kMonopoly, Analysis::kCournot};
  ShapleyBasis shapley = ShapleyBasis::kWithoutExternalities;
  std::optional<double> informed;
  double undercut = kDefaultUndercut;
  std::optional<RegionalGame> regional_game;  // unset: both games
  SolverConfig solver{};
  std::optional<RegionScenario> regions;
  std::vector<SweepAxis> sweep;
  std::size_t sweep_cap = 1'000'000;

  bool operator==(const ScenarioSpec&) const = default;
};

/// Throws Error(kConfigSyntax) with a line number on malformed text and
/// Error(kConfigValidation) naming the field on invalid values.
ScenarioSpec parse_scenario(std::string_view text);

/// Checks every parameter invariant. Throws Error(kConfigValidation).
void validate(const ScenarioSpec& spec);

/// Serializes with 17 significant digits; parse_scenario(to_text(s)) == s.
std::string to_text(const ScenarioSpec& spec);

/// Scalar fields a sweep axis may name.
const std::vector<std::string>& sweepable_params();
/// Sets the named scalar field. Throws Error(kConfigValidation) if unknown.
void set_param(ScenarioSpec& spec, std::string_view param, double value);
double get_param(const ScenarioSpec& spec, std::string_view param);

/// Number of points in the sweep grid (1 without axes).
std::size_t sweep_size(const ScenarioSpec& spec);
/// Cartesian product of the axes, first axis slowest. Each returned spec has
/// no axes left. Throws Error(kSweepSize) above spec.sweep_cap.
std::vector<ScenarioSpec> expand_sweep(const ScenarioSpec& spec);
/// The i-th point of expand_sweep without materializing the others.
ScenarioSpec sweep_point(const ScenarioSpec& spec, std::size_t i);

std::vector<std::string> preset_names();
std::string preset_description(std::string_view name);
/// Preset scenario text. Throws Error(kConfigValidation) for an unknown name.
std::string preset_text(std::string_view name);

}  // namespace infrashare
