#pragma once

// Constant-elasticity demand, the fixed-plus-linear cost function, and the
// single-firm (monopoly) solution.
//
// Units throughout the library: quantity in PB per month, price in $M per PB,
// money in $M.

namespace infrashare {

/// Demand curve q(p) = Q * p^-eps.
struct MarketParams {
  double demand_scale = 0.0;  // Q: demand at unit price
  double elasticity = 0.0;    // eps, must exceed 1

  bool operator==(const MarketParams&) const = default;
};

/// C(q) = alpha + beta * q for q > 0 and C(0) = 0.
struct CostParams {
  double fixed = 0.0;  // alpha
  double unit = 0.0;   // beta

  bool operator==(const CostParams&) const = default;
};

/// Result of a solved scenario for one service provider.
struct Outcome {
  double price = 0.0;
  double quantity = 0.0;
  double profit = 0.0;
  bool participating = false;
};

/// Break-even tolerance for participation decisions, in $M.
inline constexpr double kParticipationTolerance = 1e-9;

/// True when a profit counts as participating. Exact break-even does.
inline bool participates(double profit) {
  return profit >= -kParticipationTolerance;
}

/// Throws Error(kInvalidParameter) unless Q > 0 and eps > 1.
void validate(const MarketParams& market);

/// Throws Error(kInvalidParameter) unless alpha > 0 and beta >= 0.
void validate(const CostParams& cost);

double demand(double price, const MarketParams& market);

double inverse_demand(double total_quantity, const MarketParams& market);

double cost(double quantity, const CostParams& cost);

/// Cournot profit of a firm selling q_own when its rival sells q_other.
/// Zero when q_own == 0; may be negative.
double profit(double q_own, double q_other, const CostParams& cost,
              const MarketParams& market);

/// Profit of a firm charging `price` and capturing `share` of market demand
/// at that price: share*q(p)*(p - beta) - alpha.
double profit_at_price(double price, const CostParams& cost,
                       const MarketParams& market, double share = 1.0);

/// eps*beta/(eps-1).
double monopoly_price(const CostParams& cost, const MarketParams& market);

/// Profit-maximizing single firm. Returns the stay-out outcome (quantity 0,
/// profit 0, not participating) when the best attainable profit is negative.
/// Throws Error(kDegenerateMonopoly) when beta == 0.
Outcome monopoly_solution(const CostParams& cost, const MarketParams& market);

}  // namespace infrashare
