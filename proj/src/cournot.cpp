#include "infrashare/cournot.hpp"

#include <cmath>

#include <fmt/format.h>

#include "infrashare/errors.hpp"

namespace infrashare {

void validate(const Duopoly& d) {
  validate(d.market);
  validate(d.sp1);
  validate(d.sp2);
}

// ---------------------------------------------------------------------------
// Best responses

std::optional<double> interior_best_response(double q_other, const CostParams& own,
                                             const MarketParams& market,
                                             const SolverConfig& cfg) {
  if (!(q_other > 0.0)) {
    throw Error(ErrorCode::kDomain, "interior best response needs q_other > 0");
  }
  if (!(own.unit > 0.0)) {
    throw Error(ErrorCode::kDomain, "a zero unit cost has no finite best response");
  }
  const double eps = market.elasticity;
  // B is the price the rival's output alone sustains, in units of own.unit.
  const double b = std::pow(market.demand_scale / q_other, 1.0 / eps) / own.unit;
  if (b <= 1.0) return std::nullopt;
  const double a = (1.0 - 1.0 / eps) * b;
  const double power = 1.0 + 1.0 / eps;
  const ScalarFn ratio_eq = [=](double z) { return std::pow(z + 1.0, power) - a * z - b; };
  const double hi = expand_bracket_upward(ratio_eq, 0.0, 1.0);
  const double z = find_root(ratio_eq, 0.0, hi, cfg).x;
  return z * q_other;
}

double best_response(double q_other, const CostParams& own, const MarketParams& market,
                     const SolverConfig& cfg) {
  if (q_other < 0.0) throw Error(ErrorCode::kDomain, "q_other must be non-negative");
  if (q_other == 0.0) return monopoly_solution(own, market).quantity;
  const auto q = interior_best_response(q_other, own, market, cfg);
  if (!q) return 0.0;
  return participates(profit(*q, q_other, own, market)) ? *q : 0.0;
}

double best_response_profit(double q_other, const CostParams& own,
                            const MarketParams& market, const SolverConfig& cfg) {
  const auto q = interior_best_response(q_other, own, market, cfg);
  // Without an interior optimum profit falls with output, so the supremum over
  // positive outputs is the q -> 0 limit.
  if (!q) return -own.fixed;
  return profit(*q, q_other, own, market);
}

// ---------------------------------------------------------------------------
// Nash-Cournot

std::string to_string(Viability v) {
  switch (v) {
    case Viability::kCostRatio: return "cost-ratio";
    case Viability::kSp1Profit: return "sp1-profit";
    case Viability::kSp2Profit: return "sp2-profit";
    case Viability::kSp1QuantitySign: return "sp1-quantity-sign";
    case Viability::kSp2QuantitySign: return "sp2-quantity-sign";
  }
  return "unknown";
}

NashCournotSolution nash_cournot(const Duopoly& d) {
  validate(d.market);
  const double b1 = d.sp1.unit;
  const double b2 = d.sp2.unit;
  if (!(b1 > 0.0) || !(b2 > 0.0)) {
    throw Error(ErrorCode::kDomain, "Nash-Cournot closed form needs positive unit costs");
  }
  const double eps = d.market.elasticity;
  const double q_scale = d.market.demand_scale;
  const double c = 1.0 - 1.0 / eps;
  const double r = b2 / b1;
  if (std::abs(r - c) < 1e-12) {
    throw Error(ErrorCode::kDegenerateEquilibrium,
                fmt::format("beta2/beta1 = {} equals 1 - 1/eps", r));
  }
  const double power = 1.0 + 1.0 / eps;

  NashCournotSolution sol;
  sol.t = (1.0 - r * c) / (r - c);
  const double t = sol.t;
  const auto q1_closed = [&] {
    return q_scale * std::pow((1.0 + t * c) / (b2 * std::pow(1.0 + t, power)), eps);
  };
  const auto q2_closed = [&] {
    const double inv = 1.0 / t;
    return q_scale * std::pow((inv * c + 1.0) / (b1 * std::pow(inv + 1.0, power)), eps);
  };
  if (t > 0.0) {
    sol.q1 = q1_closed();
    sol.q2 = q2_closed();
  } else if (t == 0.0) {
    sol.q1 = q1_closed();
    sol.q2 = 0.0;
  } else if (t > -1.0) {
    // Relaxed solution with a negative SP2 output.
    sol.q1 = q1_closed();
    sol.q2 = t * sol.q1;
  } else {
    sol.q2 = q2_closed();
    sol.q1 = sol.q2 / t;
  }
  sol.price = inverse_demand(sol.q1 + sol.q2, d.market);
  // Relaxed profits: the fixed cost applies even to a negative output.
  sol.profit1 = sol.price * sol.q1 - d.sp1.fixed - b1 * sol.q1;
  sol.profit2 = sol.price * sol.q2 - d.sp2.fixed - b2 * sol.q2;
  const ViabilityReport report = check_viability(sol, d);
  sol.viable = report.viable;
  sol.violations = report.violations;
  return sol;
}

ViabilityReport check_viability(const NashCournotSolution& sol, const Duopoly& d) {
  ViabilityReport report;
  const double c = 1.0 - 1.0 / d.market.elasticity;
  const double b1 = d.sp1.unit;
  const double b2 = d.sp2.unit;
  if (c > std::min(b1 / b2, b2 / b1)) report.violations.push_back(Viability::kCostRatio);
  const double margin1 = sol.price * sol.q1 - b1 * sol.q1;
  const double margin2 = sol.price * sol.q2 - b2 * sol.q2;
  if (!participates(margin1 - d.sp1.fixed)) report.violations.push_back(Viability::kSp1Profit);
  if (!participates(margin2 - d.sp2.fixed)) report.violations.push_back(Viability::kSp2Profit);
  if (sol.q1 < 0.0) report.violations.push_back(Viability::kSp1QuantitySign);
  if (sol.q2 < 0.0) report.violations.push_back(Viability::kSp2QuantitySign);
  report.viable = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Aggression

AggressionResult aggression_quantity(Sp aggressor, const Duopoly& d,
                                     const AggressionOptions& opts) {
  const CostParams& own = d.cost(aggressor);
  const CostParams& victim = d.cost(other(aggressor));
  if (!(victim.fixed > 0.0)) {
    throw Error(ErrorCode::kNoDriveOut,
                "a victim without fixed cost can always re-enter at vanishing scale");
  }
  const Outcome mono = monopoly_solution(own, d.market);
  const ScalarFn victim_profit = [&](double q) {
    return best_response_profit(q, victim, d.market, opts.solver);
  };

  AggressionResult res;
  const double lo = mono.quantity > 0.0 ? mono.quantity : opts.threshold.abs_tol;
  if (!(victim_profit(lo) > 0.0)) {
    res.quantity = mono.quantity;
    res.monopoly_branch = true;
    res.victim_profit_at = victim_profit(lo);
    return res;
  }

  double hi = 0.0;
  try {
    hi = expand_bracket_upward(victim_profit, lo, std::max(2.0 * lo, 1.0), opts.search_cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBracket) throw;
    throw Error(ErrorCode::kNoDriveOut,
                fmt::format("victim keeps a profitable reply for every output up to {}",
                            opts.search_cap));
  }
  // `lo` side has positive victim profit; the returned hi end is the first
  // output at which the victim is out.
  const RootResult root = find_root(victim_profit, lo, hi, opts.threshold);
  const double threshold = root.lo == root.hi ? root.x : root.hi;

  const double span = threshold - lo;
  const int n = opts.monotonicity_samples;
  for (int k = 0; k < n; ++k) {
    const double left = lo + span * k / n;
    const double right = threshold + span * (k + 1) / n;
    if (!(victim_profit(left) > 0.0) || victim_profit(right) > 0.0) {
      throw Error(ErrorCode::kNonMonotoneThreshold,
                  fmt::format("victim reply profit changes sign more than once near {}",
                              threshold));
    }
  }

  res.quantity = threshold;
  res.threshold = threshold;
  res.victim_profit_at = victim_profit(threshold);
  return res;
}

// ---------------------------------------------------------------------------
// Payoff table

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kNashCournot: return "nash-cournot";
    case Strategy::kAggression: return "aggression";
    case Strategy::kSubmission: return "submission";
  }
  return "unknown";
}

namespace {

struct StrategyQuantity {
  std::optional<double> q;
  std::string note;
};

}  // namespace

PayoffTable payoff_table(const Duopoly& d, std::optional<SharingCell> sharing_unregulated,
                         std::optional<SharingCell> sharing_regulated,
                         const AggressionOptions& opts) {
  // quantities[sp][strategy]
  std::array<std::array<StrategyQuantity, 3>, 2> quantities;
  std::string nc_note;
  try {
    const NashCournotSolution nc = nash_cournot(d);
    const std::array<double, 2> q_star = {nc.q1, nc.q2};
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      auto& slot = quantities[idx(sp)][static_cast<std::size_t>(Strategy::kNashCournot)];
      if (q_star[idx(sp)] >= 0.0) {
        slot.q = q_star[idx(sp)];
      } else {
        slot.note = "negative equilibrium quantity";
      }
    }
    if (!nc.viable) nc_note = "nash-cournot equilibrium not viable";
  } catch (const Error& e) {
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      quantities[idx(sp)][static_cast<std::size_t>(Strategy::kNashCournot)].note = e.what();
    }
  }
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    auto& slot = quantities[idx(sp)][static_cast<std::size_t>(Strategy::kAggression)];
    try {
      slot.q = aggression_quantity(sp, d, opts).quantity;
    } catch (const Error& e) {
      slot.note = e.what();
    }
    quantities[idx(sp)][static_cast<std::size_t>(Strategy::kSubmission)].q = 0.0;
  }

  PayoffTable table;
  for (Strategy s1 : kStrategies) {
    for (Strategy s2 : kStrategies) {
      PayoffCell& cell = table.cells[static_cast<std::size_t>(s1)][static_cast<std::size_t>(s2)];
      const auto& a = quantities[0][static_cast<std::size_t>(s1)];
      const auto& b = quantities[1][static_cast<std::size_t>(s2)];
      if (!a.q || !b.q) {
        cell.note = !a.q ? "sp1: " + a.note : "sp2: " + b.note;
        continue;
      }
      cell.available = true;
      cell.q1 = *a.q;
      cell.q2 = *b.q;
      cell.profit1 = profit(cell.q1, cell.q2, d.sp1, d.market);
      cell.profit2 = profit(cell.q2, cell.q1, d.sp2, d.market);
      const bool nc_vs_sub =
          (s1 == Strategy::kNashCournot && s2 == Strategy::kSubmission) ||
          (s1 == Strategy::kSubmission && s2 == Strategy::kNashCournot);
      cell.non_viable_outcome = nc_vs_sub;
      if ((s1 == Strategy::kNashCournot || s2 == Strategy::kNashCournot) && !nc_note.empty()) {
        cell.note = nc_note;
      }
    }
  }
  table.sharing_unregulated = sharing_unregulated;
  table.sharing_regulated = sharing_regulated;
  return table;
}

}  // namespace infrashare
