#include "infrashare/sharing.hpp"

#include <algorithm>

#include "infrashare/errors.hpp"

namespace infrashare {

CostParams coop_cost_params(const Duopoly& d) {
  return {std::min(d.sp1.fixed, d.sp2.fixed), std::min(d.sp1.unit, d.sp2.unit)};
}

std::array<double, 2> shapley_split(double standalone1, double standalone2,
                                    double coalition) {
  return {0.5 * (standalone1 + coalition - standalone2),
          0.5 * (standalone2 + coalition - standalone1)};
}

namespace {

NashCournotSolution viable_nash(const Duopoly& d, ErrorCode code, const char* what) {
  NashCournotSolution nc = nash_cournot(d);
  if (!nc.viable) throw Error(code, what);
  return nc;
}

SharingOutcome finish(SharingOutcome out, double standalone1, double standalone2) {
  if (!participates(out.combined_profit)) {
    out.quantity = 0.0;
    out.combined_profit = 0.0;
    out.split = {0.0, 0.0};
    out.participating = false;
    return out;
  }
  out.participating = true;
  out.split = shapley_split(standalone1, standalone2, out.combined_profit);
  out.negative_share = out.split[0] < 0.0 || out.split[1] < 0.0;
  return out;
}

}  // namespace

SharingOutcome sharing_monopoly(const Duopoly& d, ShapleyBasis basis) {
  validate(d.market);
  const CostParams coop = coop_cost_params(d);
  SharingOutcome out;
  out.mode = {SharingPricing::kMonopoly, basis};
  out.price = monopoly_price(coop, d.market);
  if (coop.unit == 0.0) {
    throw Error(ErrorCode::kDegenerateMonopoly, "combined entity has zero unit cost");
  }
  out.quantity = demand(out.price, d.market);
  out.combined_profit = out.quantity * (out.price - coop.unit) - coop.fixed;

  double v1 = 0.0;
  double v2 = 0.0;
  if (basis == ShapleyBasis::kWithoutExternalities) {
    v1 = monopoly_solution(d.sp1, d.market).profit;
    v2 = monopoly_solution(d.sp2, d.market).profit;
  } else {
    const NashCournotSolution nc =
        viable_nash(d, ErrorCode::kExternalityBasis,
                    "externality basis needs a viable Nash-Cournot equilibrium");
    v1 = nc.profit1;
    v2 = nc.profit2;
  }
  return finish(out, v1, v2);
}

SharingOutcome sharing_regulated(const Duopoly& d, ShapleyBasis basis) {
  const NashCournotSolution nc = viable_nash(
      d, ErrorCode::kNoCap, "regulated price cap needs a viable Nash-Cournot equilibrium");
  const CostParams coop = coop_cost_params(d);
  SharingOutcome out;
  out.mode = {SharingPricing::kRegulatedNash, basis};
  out.price = nc.price;
  out.quantity = demand(out.price, d.market);
  out.combined_profit = out.quantity * out.price - (coop.fixed + coop.unit * out.quantity);

  double v1 = 0.0;
  double v2 = 0.0;
  if (basis == ShapleyBasis::kWithoutExternalities) {
    // Every coalition sells the same regulated quantity; only costs differ.
    v1 = out.quantity * out.price - (d.sp1.fixed + d.sp1.unit * out.quantity);
    v2 = out.quantity * out.price - (d.sp2.fixed + d.sp2.unit * out.quantity);
  } else {
    v1 = nc.q1 * out.price - (d.sp1.fixed + d.sp1.unit * nc.q1);
    v2 = nc.q2 * out.price - (d.sp2.fixed + d.sp2.unit * nc.q2);
  }
  return finish(out, v1, v2);
}

}  // namespace infrashare
