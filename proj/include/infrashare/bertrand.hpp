#pragma once

#include <array>
#include <string>
#include <vector>

#include "infrashare/cournot.hpp"
#include "infrashare/market.hpp"
#include "infrashare/solver.hpp"

namespace infrashare {

/// Interval of prices on which a firm's (scaled) monopoly profit is
/// non-negative. `hi` is +inf for a firm without fixed cost.
struct PriceRange {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

enum class BertrandRegime {
  kBothOut,
  kUncontestedMonopoly,
  kDriveOut,
  kBertrandCurse,
  kInformedSplit,
};

std::string to_string(BertrandRegime r);

struct BertrandOutcome {
  std::array<double, 2> prices{};
  std::array<double, 2> quantities{};
  std::array<double, 2> profits{};
  std::array<bool, 2> participating{};
  BertrandRegime regime = BertrandRegime::kBothOut;
  /// Zero-profit price ranges used for the classification (scaled by the
  /// low-price share in the informed variants).
  std::array<PriceRange, 2> ranges{};
  std::vector<std::string> warnings;
};

/// Share I of users buy from the cheapest SP; the remaining U = 1 - I pick
/// an SP at random.
struct InformedFraction {
  double informed = 1.0;

  double uninformed() const { return 1.0 - informed; }
  /// Demand share of the SP with the lower price.
  double low_share() const { return informed + 0.5 * uninformed(); }
  /// Demand share of the SP with the higher price.
  double high_share() const { return 0.5 * uninformed(); }
};

void validate(const InformedFraction& f);

inline constexpr double kDefaultUndercut = 0.01;

/// Roots of share*q(p)*(p - beta) - alpha on either side of the monopoly
/// price. Empty when even the monopoly price loses money.
PriceRange zero_profit_prices(const CostParams& cost, const MarketParams& market,
                              double scale = 1.0, const SolverConfig& cfg = {});

/// The largest multiple of `undercut` strictly below `price`.
double undercut_price(double price, double undercut);

/// All users price sensitive; the cheaper SP takes the whole market and equal
/// prices split it. `undercut` is the price granularity.
BertrandOutcome bertrand_basic(const Duopoly& d, double undercut = kDefaultUndercut,
                               const SolverConfig& cfg = {});

/// Informed/uninformed variant. The SP with the lower zero-profit price under
/// the low-price share undercuts; the other sells to its uninformed half at
/// its best high price. I == 1 delegates to bertrand_basic, I == 0 makes both
/// SPs monopolists over their captive halves.
BertrandOutcome bertrand_informed(const Duopoly& d, InformedFraction f,
                                  const SolverConfig& cfg = {});

/// Both SPs build on the cheapest shared costs but still compete on price.
BertrandOutcome bertrand_shared_cost(const Duopoly& d, InformedFraction f,
                                     const SolverConfig& cfg = {});

/// Per-SP quantities and profits when the SPs post prices p1 and p2 and
/// `present[i]` says whether SP i is in the market. Ties split every user
/// group evenly. Used by the curve writer and by equilibrium checks.
struct PricePayoff {
  std::array<double, 2> quantities{};
  std::array<double, 2> profits{};
};
PricePayoff evaluate_prices(const Duopoly& d, InformedFraction f,
                            std::array<double, 2> prices,
                            std::array<bool, 2> present = {true, true});

}  // namespace infrashare
