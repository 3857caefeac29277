#include "infrashare/market.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "infrashare/errors.hpp"

namespace infrashare {

void validate(const MarketParams& market) {
  if (!(market.demand_scale > 0.0) || !std::isfinite(market.demand_scale)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("Q must be positive (got {})", market.demand_scale));
  }
  if (!(market.elasticity > 1.0) || !std::isfinite(market.elasticity)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("epsilon must exceed 1 (got {})", market.elasticity));
  }
}

void validate(const CostParams& cost) {
  if (!(cost.fixed > 0.0) || !std::isfinite(cost.fixed)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("alpha must be positive (got {})", cost.fixed));
  }
  if (!(cost.unit >= 0.0) || !std::isfinite(cost.unit)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("beta must be non-negative (got {})", cost.unit));
  }
}

double demand(double price, const MarketParams& market) {
  if (!(price > 0.0)) {
    throw Error(ErrorCode::kDomain,
                fmt::format("demand needs a positive price (got {})", price));
  }
  return market.demand_scale * std::pow(price, -market.elasticity);
}

double inverse_demand(double total_quantity, const MarketParams& market) {
  if (!(total_quantity > 0.0)) {
    throw Error(ErrorCode::kDomain,
                fmt::format("price undefined at total quantity {}", total_quantity));
  }
  return std::pow(total_quantity / market.demand_scale, -1.0 / market.elasticity);
}

double cost(double quantity, const CostParams& cost) {
  return quantity > 0.0 ? cost.fixed + cost.unit * quantity : 0.0;
}

double profit(double q_own, double q_other, const CostParams& cost,
              const MarketParams& market) {
  if (q_own < 0.0 || q_other < 0.0) {
    throw Error(ErrorCode::kDomain, "quantities must be non-negative");
  }
  if (q_own == 0.0) return 0.0;
  return inverse_demand(q_own + q_other, market) * q_own -
         (cost.fixed + cost.unit * q_own);
}

double profit_at_price(double price, const CostParams& cost,
                       const MarketParams& market, double share) {
  const double q = share * demand(price, market);
  if (q == 0.0) return 0.0;
  return q * (price - cost.unit) - cost.fixed;
}

double monopoly_price(const CostParams& cost, const MarketParams& market) {
  const double eps = market.elasticity;
  return eps * cost.unit / (eps - 1.0);
}

Outcome monopoly_solution(const CostParams& cost, const MarketParams& market) {
  validate(market);
  if (cost.unit == 0.0) {
    throw Error(ErrorCode::kDegenerateMonopoly,
                "beta == 0 gives a zero monopoly price and unbounded demand");
  }
  if (cost.unit < 0.0 || cost.fixed < 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "cost parameters must be non-negative");
  }
  Outcome out;
  out.price = monopoly_price(cost, market);
  out.quantity = demand(out.price, market);
  out.profit = out.quantity * (out.price - cost.unit) - cost.fixed;
  out.participating = participates(out.profit);
  if (!out.participating) {
    out.quantity = 0.0;
    out.profit = 0.0;
  }
  return out;
}

}  // namespace infrashare
