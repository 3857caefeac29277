#include "infrashare/bertrand.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "infrashare/errors.hpp"
#include "infrashare/sharing.hpp"

namespace infrashare {

std::string to_string(BertrandRegime r) {
  switch (r) {
    case BertrandRegime::kBothOut: return "both-out";
    case BertrandRegime::kUncontestedMonopoly: return "uncontested-monopoly";
    case BertrandRegime::kDriveOut: return "drive-out";
    case BertrandRegime::kBertrandCurse: return "bertrand-curse";
    case BertrandRegime::kInformedSplit: return "informed-split";
  }
  return "unknown";
}

void validate(const InformedFraction& f) {
  if (!(f.informed >= 0.0 && f.informed <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("informed fraction must lie in [0, 1] (got {})", f.informed));
  }
}

PriceRange zero_profit_prices(const CostParams& cost, const MarketParams& market,
                              double scale, const SolverConfig& cfg) {
  validate(market);
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kDomain, fmt::format("demand scale must be positive (got {})", scale));
  }
  if (!(cost.unit > 0.0)) {
    throw Error(ErrorCode::kDegenerateMonopoly,
                "zero-profit prices need a positive unit cost");
  }
  const double peak = monopoly_price(cost, market);
  const ScalarFn f = [&](double p) { return profit_at_price(p, cost, market, scale); };
  const double best = f(peak);
  PriceRange range;
  if (!participates(best)) return range;
  range.empty = false;
  if (best <= 0.0) {
    range.lo = range.hi = peak;
    return range;
  }
  if (cost.fixed <= 0.0) {
    range.lo = cost.unit;
    range.hi = std::numeric_limits<double>::infinity();
    return range;
  }
  range.lo = find_root(f, cost.unit, peak, cfg).x;
  const double upper = expand_bracket_upward(f, peak, 2.0 * peak);
  range.hi = find_root(f, peak, upper, cfg).x;
  return range;
}

double undercut_price(double price, double undercut) {
  if (!(undercut > 0.0)) {
    throw Error(ErrorCode::kDomain, fmt::format("undercut must be positive (got {})", undercut));
  }
  return (std::ceil(price / undercut) - 1.0) * undercut;
}

PricePayoff evaluate_prices(const Duopoly& d, InformedFraction f, std::array<double, 2> prices,
                            std::array<bool, 2> present) {
  std::array<double, 2> shares{};
  if (present[0] && present[1]) {
    if (prices[0] < prices[1]) {
      shares = {f.low_share(), f.high_share()};
    } else if (prices[1] < prices[0]) {
      shares = {f.high_share(), f.low_share()};
    } else {
      shares = {0.5, 0.5};
    }
  } else {
    shares = {present[0] ? 1.0 : 0.0, present[1] ? 1.0 : 0.0};
  }
  PricePayoff out;
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    const std::size_t i = idx(sp);
    if (shares[i] == 0.0) continue;
    out.quantities[i] = shares[i] * demand(prices[i], d.market);
    out.profits[i] = profit_at_price(prices[i], d.cost(sp), d.market, shares[i]);
  }
  return out;
}

namespace {

bool ties(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

void set_monopolist(BertrandOutcome& out, const Duopoly& d, Sp sp, double share) {
  const std::size_t i = idx(sp);
  const CostParams& c = d.cost(sp);
  out.prices[i] = monopoly_price(c, d.market);
  out.quantities[i] = share * demand(out.prices[i], d.market);
  out.profits[i] = out.quantities[i] * (out.prices[i] - c.unit) - c.fixed;
  out.participating[i] = true;
}

void set_absent(BertrandOutcome& out, Sp sp, double quoted_price) {
  const std::size_t i = idx(sp);
  out.prices[i] = quoted_price;
  out.quantities[i] = 0.0;
  out.profits[i] = 0.0;
  out.participating[i] = false;
}

}  // namespace

BertrandOutcome bertrand_basic(const Duopoly& d, double undercut, const SolverConfig& cfg) {
  validate(d.market);
  if (!(undercut > 0.0)) {
    throw Error(ErrorCode::kDomain, fmt::format("undercut must be positive (got {})", undercut));
  }
  BertrandOutcome out;
  out.ranges = {zero_profit_prices(d.sp1, d.market, 1.0, cfg),
                zero_profit_prices(d.sp2, d.market, 1.0, cfg)};
  const auto& r = out.ranges;

  if (r[0].empty && r[1].empty) {
    out.regime = BertrandRegime::kBothOut;
    set_absent(out, Sp::kOne, monopoly_price(d.sp1, d.market));
    set_absent(out, Sp::kTwo, monopoly_price(d.sp2, d.market));
    return out;
  }
  if (r[0].empty || r[1].empty) {
    const Sp strong = r[0].empty ? Sp::kTwo : Sp::kOne;
    out.regime = BertrandRegime::kUncontestedMonopoly;
    set_monopolist(out, d, strong, 1.0);
    set_absent(out, other(strong), monopoly_price(d.cost(other(strong)), d.market));
    return out;
  }
  if (ties(r[0].lo, r[1].lo)) {
    out.regime = BertrandRegime::kBertrandCurse;
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      const std::size_t i = idx(sp);
      out.prices[i] = r[i].lo;
      out.quantities[i] = 0.5 * demand(r[i].lo, d.market);
      out.profits[i] = 0.0;
      out.participating[i] = true;
    }
    return out;
  }

  const Sp strong = r[0].lo < r[1].lo ? Sp::kOne : Sp::kTwo;
  const Sp weak = other(strong);
  const PriceRange& rs = r[idx(strong)];
  const PriceRange& rw = r[idx(weak)];
  const CostParams& cs = d.cost(strong);
  if (rs.hi <= rw.lo) {
    out.regime = BertrandRegime::kUncontestedMonopoly;
    set_monopolist(out, d, strong, 1.0);
    set_absent(out, weak, rw.lo);
    return out;
  }

  out.regime = BertrandRegime::kDriveOut;
  double price = undercut_price(rw.lo, undercut);
  if (price < rs.lo) {
    price = rs.lo;
    out.warnings.push_back("zero-profit prices differ by less than the undercut step");
  }
  price = std::min(price, monopoly_price(cs, d.market));
  const std::size_t s = idx(strong);
  out.prices[s] = price;
  out.quantities[s] = demand(price, d.market);
  out.profits[s] = out.quantities[s] * (price - cs.unit) - cs.fixed;
  out.participating[s] = true;
  set_absent(out, weak, rw.lo);
  return out;
}

BertrandOutcome bertrand_informed(const Duopoly& d, InformedFraction f,
                                  const SolverConfig& cfg) {
  validate(d.market);
  validate(f);
  if (f.informed == 1.0) return bertrand_basic(d, kDefaultUndercut, cfg);

  BertrandOutcome out;
  out.regime = BertrandRegime::kInformedSplit;
  if (f.informed == 0.0) {
    // Every user is captive to a random SP: two independent half-markets.
    out.warnings.push_back("degenerate: no informed users, each SP serves a captive half");
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      const Outcome half = monopoly_solution(
          d.cost(sp), {0.5 * d.market.demand_scale, d.market.elasticity});
      const std::size_t i = idx(sp);
      out.prices[i] = monopoly_price(d.cost(sp), d.market);
      out.quantities[i] = half.quantity;
      out.profits[i] = half.profit;
      out.participating[i] = half.participating;
    }
    return out;
  }

  const double low = f.low_share();
  const double high = f.high_share();
  out.ranges = {zero_profit_prices(d.sp1, d.market, low, cfg),
                zero_profit_prices(d.sp2, d.market, low, cfg)};
  const auto& r = out.ranges;
  if (r[0].empty && r[1].empty) {
    out.regime = BertrandRegime::kBothOut;
    set_absent(out, Sp::kOne, monopoly_price(d.sp1, d.market));
    set_absent(out, Sp::kTwo, monopoly_price(d.sp2, d.market));
    return out;
  }

  Sp low_sp = Sp::kOne;
  if (r[0].empty) {
    low_sp = Sp::kTwo;
  } else if (!r[1].empty) {
    if (ties(r[0].lo, r[1].lo)) {
      out.warnings.push_back("equal zero-profit prices: SP1 takes the low-price role");
    } else if (r[1].lo < r[0].lo) {
      low_sp = Sp::kTwo;
    }
  }
  const Sp high_sp = other(low_sp);
  const CostParams& cl = d.cost(low_sp);
  const CostParams& ch = d.cost(high_sp);
  const std::size_t li = idx(low_sp);
  const std::size_t hi = idx(high_sp);

  if (r[hi].empty) {
    // The high-price SP cannot profit even when cheapest: plain monopoly.
    out.regime = BertrandRegime::kUncontestedMonopoly;
    set_monopolist(out, d, low_sp, 1.0);
    set_absent(out, high_sp, monopoly_price(ch, d.market));
    return out;
  }

  const double high_price = monopoly_price(ch, d.market);
  const double high_value = profit_at_price(high_price, ch, d.market, high);
  const bool high_stays = participates(high_value);
  // Highest price at which the low-price SP keeps the other from undercutting.
  double indifference = r[hi].lo;
  if (high_stays && high_value > 0.0) {
    const ScalarFn gap = [&](double p) {
      return profit_at_price(p, ch, d.market, low) - high_value;
    };
    try {
      indifference = find_root(gap, r[hi].lo, high_price, cfg).x;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBracket) throw;
      throw Error(ErrorCode::kStructure,
                  fmt::format("no undercut-indifference price below {}", high_price));
    }
  }
  const double low_price = std::min(indifference, monopoly_price(cl, d.market));

  if (high_stays) {
    out.prices[hi] = high_price;
    out.quantities[hi] = high * demand(high_price, d.market);
    out.profits[hi] = high_value;
    out.participating[hi] = true;
    out.prices[li] = low_price;
    out.quantities[li] = low * demand(low_price, d.market);
    out.profits[li] = profit_at_price(low_price, cl, d.market, low);
    out.participating[li] = true;
  } else {
    // The uninformed half cannot carry the high-price SP's fixed cost: it
    // leaves, and the low-price SP serves every user.
    out.regime = BertrandRegime::kDriveOut;
    set_absent(out, high_sp, indifference);
    out.prices[li] = low_price;
    out.quantities[li] = demand(low_price, d.market);
    out.profits[li] = profit_at_price(low_price, cl, d.market, 1.0);
    out.participating[li] = true;
  }
  return out;
}

BertrandOutcome bertrand_shared_cost(const Duopoly& d, InformedFraction f,
                                     const SolverConfig& cfg) {
  validate(f);
  const CostParams coop = coop_cost_params(d);
  const Duopoly shared{coop, coop, d.market};
  if (f.informed < 1.0) return bertrand_informed(shared, f, cfg);

  validate(d.market);
  BertrandOutcome out;
  out.regime = BertrandRegime::kBertrandCurse;
  for (std::size_t i = 0; i < 2; ++i) {
    out.prices[i] = coop.unit;
    out.quantities[i] = 0.5 * demand(coop.unit, d.market);
    out.profits[i] = out.quantities[i] * (out.prices[i] - coop.unit) - coop.fixed;
    out.participating[i] = true;
  }
  out.warnings.push_back(
      "shared-cost curse: both SPs price at unit cost and leave the fixed cost uncovered");
  return out;
}

}  // namespace infrashare
