#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "infrashare/market.hpp"
#include "infrashare/solver.hpp"

namespace infrashare {

/// Service-provider index. Values double as array indices.
enum class Sp { kOne = 0, kTwo = 1 };

inline constexpr Sp other(Sp sp) { return sp == Sp::kOne ? Sp::kTwo : Sp::kOne; }
inline constexpr std::size_t idx(Sp sp) { return static_cast<std::size_t>(sp); }

struct Duopoly {
  CostParams sp1;
  CostParams sp2;
  MarketParams market;

  const CostParams& cost(Sp sp) const { return sp == Sp::kOne ? sp1 : sp2; }
  /// The same market with SP roles exchanged.
  Duopoly swapped() const { return {sp2, sp1, market}; }
  bool operator==(const Duopoly&) const = default;
};

/// Validates both cost sets (alpha > 0, beta >= 0) and the market.
void validate(const Duopoly& d);

// ---------------------------------------------------------------------------
// Best responses
// ---------------------------------------------------------------------------

/// Interior solution of the first-order condition for a firm with costs `own`
/// facing rival output q_other > 0: q = z*q_other where z > 0 solves
/// (z+1)^(1+1/eps) = A z + B. Empty when no positive root exists (the rival's
/// output alone already pushes the price to or below `own.unit`).
std::optional<double> interior_best_response(double q_other, const CostParams& own,
                                             const MarketParams& market,
                                             const SolverConfig& cfg = {});

/// Profit-maximizing reply to q_other. Returns 0 when the interior reply loses
/// money, and the monopoly quantity when q_other == 0.
double best_response(double q_other, const CostParams& own, const MarketParams& market,
                     const SolverConfig& cfg = {});

/// Profit the firm earns when replying optimally, before the stay-out
/// truncation: the interior-reply profit, or -alpha (the q -> 0 limit) when
/// no interior reply exists.
double best_response_profit(double q_other, const CostParams& own,
                            const MarketParams& market, const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Nash-Cournot equilibrium
// ---------------------------------------------------------------------------

enum class Viability {
  kCostRatio,       // (1 - 1/eps) > min(beta1/beta2, beta2/beta1)
  kSp1Profit,       // alpha1 exceeds SP1's variable margin at the equilibrium
  kSp2Profit,
  kSp1QuantitySign,  // q1* < 0
  kSp2QuantitySign,
};

std::string to_string(Viability v);

struct NashCournotSolution {
  double t = 0.0;  // q2*/q1*
  double q1 = 0.0;
  double q2 = 0.0;
  double price = 0.0;
  double profit1 = 0.0;
  double profit2 = 0.0;
  bool viable = false;
  std::vector<Viability> violations;
};

/// Closed-form equilibrium of the relaxed game plus its viability check.
/// Throws Error(kDegenerateEquilibrium) when beta2/beta1 == 1 - 1/eps.
NashCournotSolution nash_cournot(const Duopoly& d);

struct ViabilityReport {
  bool viable = true;
  std::vector<Viability> violations;
};

/// Checks the cost-ratio condition, both fixed-cost conditions and the signs
/// of the equilibrium quantities; each violation is reported separately.
ViabilityReport check_viability(const NashCournotSolution& sol, const Duopoly& d);

// ---------------------------------------------------------------------------
// Aggression (drive-out)
// ---------------------------------------------------------------------------

struct AggressionResult {
  double quantity = 0.0;
  /// Smallest aggressor output at which the victim cannot earn a positive
  /// profit, if it lies above the aggressor's monopoly output.
  std::optional<double> threshold;
  bool monopoly_branch = false;
  double victim_profit_at = 0.0;  // victim's best-reply profit at `quantity`
};

struct AggressionOptions {
  SolverConfig solver{};
  /// Tolerances for locating the drive-out threshold. Tight enough that the
  /// threshold is resolved to within a few ulps.
  SolverConfig threshold{1e-16, 1e-12, 400};
  double search_cap = kBracketCap;
  int monotonicity_samples = 64;
};

/// q' = argmax of the aggressor's solo profit over outputs that leave the
/// victim no profitable reply. Throws Error(kNoDriveOut) when the constraint
/// set is empty within `search_cap` or the victim has no fixed cost, and
/// Error(kNonMonotoneThreshold) when the victim's reply profit crosses zero
/// more than once around the threshold.
AggressionResult aggression_quantity(Sp aggressor, const Duopoly& d,
                                     const AggressionOptions& opts = {});

// ---------------------------------------------------------------------------
// Strategy payoff table
// ---------------------------------------------------------------------------

enum class Strategy { kNashCournot = 0, kAggression = 1, kSubmission = 2 };

inline constexpr std::array<Strategy, 3> kStrategies = {
    Strategy::kNashCournot, Strategy::kAggression, Strategy::kSubmission};

std::string to_string(Strategy s);

struct PayoffCell {
  bool available = false;         // false when a strategy quantity failed
  bool non_viable_outcome = false;  // printed in italics in the reference table
  double q1 = 0.0;
  double q2 = 0.0;
  double profit1 = 0.0;
  double profit2 = 0.0;
  std::string note;  // failure reason when unavailable
};

struct SharingCell {
  double profit1 = 0.0;
  double profit2 = 0.0;
};

/// Rows are SP1's strategy, columns SP2's.
struct PayoffTable {
  std::array<std::array<PayoffCell, 3>, 3> cells{};
  std::optional<SharingCell> sharing_unregulated;
  std::optional<SharingCell> sharing_regulated;

  const PayoffCell& at(Strategy sp1, Strategy sp2) const {
    return cells[static_cast<std::size_t>(sp1)][static_cast<std::size_t>(sp2)];
  }
};

/// Fills the nine competitive cells by direct profit evaluation at the
/// strategy-implied quantities (NashCournot -> q*, Aggression -> q',
/// Submission -> 0). Sharing cells are copied onto the diagonal when given.
PayoffTable payoff_table(const Duopoly& d, std::optional<SharingCell> sharing_unregulated = {},
                         std::optional<SharingCell> sharing_regulated = {},
                         const AggressionOptions& opts = {});

}  // namespace infrashare
