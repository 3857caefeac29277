#include "infrashare/multiregion.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "infrashare/errors.hpp"
#include "infrashare/sharing.hpp"

namespace infrashare {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool reaches(const Footprint& f, UserClass c) {
  switch (c) {
    case UserClass::kWest: return f.west;
    case UserClass::kEast: return f.east;
    case UserClass::kBoth: return f.national();
  }
  return false;
}

bool covers(const Footprint& f, UserClass region) {
  return region == UserClass::kWest ? f.west : f.east;
}

double reachable_mass(const RegionScenario& s, Sp sp) {
  double mass = 0.0;
  for (UserClass c : kUserClasses) {
    if (reaches(s.footprint[idx(sp)], c)) mass += s.users.of(c);
  }
  return mass;
}

MarketParams scaled(const MarketParams& m, double mass) {
  return {m.demand_scale * mass, m.elasticity};
}

RegionalOutcome blank_outcome(const RegionScenario& s) {
  RegionalOutcome out;
  for (UserClass c : kUserClasses) {
    ClassOutcome& co = out.classes[static_cast<std::size_t>(c)];
    co.user_class = c;
    co.mass = s.users.of(c);
    co.price = {kNaN, kNaN};
    co.quantity = {0.0, 0.0};
  }
  return out;
}

// Fixed cost attributed to one region built by `sp`.
double per_region_fixed(const RegionScenario& s, const Duopoly& d, Sp sp) {
  return regional_fixed_cost(s, d, sp) / s.footprint[idx(sp)].regions();
}

}  // namespace

std::string to_string(UserClass c) {
  switch (c) {
    case UserClass::kWest: return "W";
    case UserClass::kEast: return "E";
    case UserClass::kBoth: return "WE";
  }
  return "?";
}

double UserFractions::of(UserClass c) const {
  switch (c) {
    case UserClass::kWest: return west;
    case UserClass::kEast: return east;
    case UserClass::kBoth: return both;
  }
  return 0.0;
}

void validate(const RegionScenario& s) {
  const UserFractions& u = s.users;
  if (!(u.west >= 0.0) || !(u.east >= 0.0) || !(u.both >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "user fractions must be non-negative");
  }
  if (std::abs(u.west + u.east + u.both - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("user fractions must sum to 1 (got {})", u.west + u.east + u.both));
  }
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    if (s.footprint[idx(sp)].empty()) {
      throw Error(ErrorCode::kInvalidParameter,
                  fmt::format("sp{} footprint is empty", idx(sp) + 1));
    }
  }
}

double regional_fixed_cost(const RegionScenario& s, const Duopoly& d, Sp sp) {
  const double alpha = d.cost(sp).fixed;
  switch (s.alpha_rule) {
    case AlphaRule::kPerRegion: return 0.5 * alpha * s.footprint[idx(sp)].regions();
    case AlphaRule::kFull: return alpha;
  }
  return alpha;
}

std::array<Outcome, 2> standalone_monopolies(const RegionScenario& s, const Duopoly& d) {
  validate(s);
  validate(d.market);
  std::array<Outcome, 2> out{};
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    const double mass = reachable_mass(s, sp);
    if (mass <= 0.0) continue;
    const CostParams c{regional_fixed_cost(s, d, sp), d.cost(sp).unit};
    out[idx(sp)] = monopoly_solution(c, scaled(d.market, mass));
  }
  return out;
}

RegionalOutcome regional_standalone(const RegionScenario& s, const Duopoly& d) {
  validate(s);
  const auto& f = s.footprint;
  if ((f[0].west && f[1].west) || (f[0].east && f[1].east)) {
    throw Error(ErrorCode::kWrongScenario,
                "footprints overlap; use the competition analysis");
  }
  const auto mono = standalone_monopolies(s, d);
  RegionalOutcome out = blank_outcome(s);
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    const std::size_t i = idx(sp);
    out.profits[i] = mono[i].profit;
    out.participating[i] = mono[i].participating;
  }
  for (UserClass c : kUserClasses) {
    ClassOutcome& co = out.classes[static_cast<std::size_t>(c)];
    bool served = false;
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      const std::size_t i = idx(sp);
      if (!reaches(f[i], c)) continue;
      served = true;
      co.price[i] = monopoly_price(d.cost(sp), d.market);
      if (mono[i].participating) co.quantity[i] = co.mass * demand(co.price[i], d.market);
    }
    co.unservable = !served;
  }
  return out;
}

RegionalOutcome regional_cooperation(const RegionScenario& s, const Duopoly& d) {
  validate(s);
  validate(d.market);
  const auto& f = s.footprint;
  if (!(f[0].west || f[1].west) || !(f[0].east || f[1].east)) {
    throw Error(ErrorCode::kWrongScenario, "cooperation needs both regions covered");
  }

  // Region costs for the combined entity: (fixed share, unit cost).
  std::array<CostParams, 2> region_cost{};
  for (UserClass region : {UserClass::kWest, UserClass::kEast}) {
    std::vector<Sp> coverers;
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      if (covers(f[idx(sp)], region)) coverers.push_back(sp);
    }
    CostParams& rc = region_cost[static_cast<std::size_t>(region)];
    std::optional<Sp> builder;
    if (coverers.size() == 1) {
      builder = coverers.front();
    } else if (s.coop_builder == CoopBuilder::kLocal &&
               f[0].regions() != f[1].regions()) {
      builder = f[0].regions() < f[1].regions() ? Sp::kOne : Sp::kTwo;
    }
    if (builder) {
      rc = {per_region_fixed(s, d, *builder), d.cost(*builder).unit};
    } else {
      rc = {std::min(per_region_fixed(s, d, Sp::kOne), per_region_fixed(s, d, Sp::kTwo)),
            std::min(d.sp1.unit, d.sp2.unit)};
    }
  }
  const double fixed = region_cost[0].fixed + region_cost[1].fixed;
  const std::array<double, 3> unit = {region_cost[0].unit, region_cost[1].unit,
                                      0.5 * (region_cost[0].unit + region_cost[1].unit)};

  // One price for all classes: the monopoly price at the mass-weighted unit cost.
  double mass = 0.0;
  double weighted_unit = 0.0;
  for (UserClass c : kUserClasses) {
    mass += s.users.of(c);
    weighted_unit += s.users.of(c) * unit[static_cast<std::size_t>(c)];
  }
  const double mean_unit = weighted_unit / mass;
  if (!(mean_unit > 0.0)) {
    throw Error(ErrorCode::kDegenerateMonopoly, "combined entity has zero unit cost");
  }
  const double eps = d.market.elasticity;
  const double price = eps * mean_unit / (eps - 1.0);

  RegionalOutcome out = blank_outcome(s);
  double quantity = 0.0;
  double combined = -fixed;
  for (UserClass c : kUserClasses) {
    ClassOutcome& co = out.classes[static_cast<std::size_t>(c)];
    co.price = {price, price};
    co.combined_quantity = co.mass * demand(price, d.market);
    quantity += co.combined_quantity;
    combined += co.combined_quantity * (price - unit[static_cast<std::size_t>(c)]);
  }
  const auto mono = standalone_monopolies(s, d);
  out.combined_price = price;
  if (!participates(combined)) {
    out.warnings.push_back("combined entity cannot cover its fixed costs and stays out");
    for (auto& co : out.classes) co.combined_quantity = 0.0;
    out.combined_quantity = 0.0;
    out.combined_profit = 0.0;
    out.split = std::array<double, 2>{0.0, 0.0};
    return out;
  }
  out.combined_quantity = quantity;
  out.combined_profit = combined;
  out.split = shapley_split(mono[0].profit, mono[1].profit, combined);
  out.profits = *out.split;
  out.participating = {true, true};
  if ((*out.split)[0] < 0.0 || (*out.split)[1] < 0.0) {
    out.warnings.push_back("negative Shapley share");
  }
  return out;
}

RegionalOutcome regional_competition(const RegionScenario& s, const Duopoly& d,
                                     RegionalGame game, double undercut) {
  validate(s);
  validate(d.market);
  const auto& f = s.footprint;
  const bool west_shared = f[0].west && f[1].west;
  const bool east_shared = f[0].east && f[1].east;
  if (west_shared == east_shared) {
    throw Error(ErrorCode::kWrongScenario,
                "competition needs exactly one region served by both SPs");
  }
  const UserClass contested = west_shared ? UserClass::kWest : UserClass::kEast;

  RegionalOutcome out = blank_outcome(s);
  std::array<double, 2> variable{};  // revenue minus unit costs
  std::array<double, 2> captive_mass{};
  for (UserClass c : kUserClasses) {
    if (c == contested) continue;
    ClassOutcome& co = out.classes[static_cast<std::size_t>(c)];
    int servers = 0;
    for (Sp sp : {Sp::kOne, Sp::kTwo}) servers += reaches(f[idx(sp)], c) ? 1 : 0;
    if (servers == 0) {
      co.unservable = true;
      continue;
    }
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      const std::size_t i = idx(sp);
      if (!reaches(f[i], c)) continue;
      co.price[i] = monopoly_price(d.cost(sp), d.market);
      co.quantity[i] = co.mass * demand(co.price[i], d.market);
      variable[i] += co.quantity[i] * (co.price[i] - d.cost(sp).unit);
      captive_mass[i] += co.mass;
    }
  }

  ClassOutcome& cc = out.classes[static_cast<std::size_t>(contested)];
  if (cc.mass > 0.0) {
    // An SP with captive users has already paid its fixed cost.
    std::array<CostParams, 2> contest_cost{};
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      const std::size_t i = idx(sp);
      contest_cost[i] = {captive_mass[i] > 0.0 ? 0.0 : regional_fixed_cost(s, d, sp),
                         d.cost(sp).unit};
    }
    const Duopoly sub{contest_cost[0], contest_cost[1], scaled(d.market, cc.mass)};
    std::array<double, 2> q{};
    std::array<double, 2> p{kNaN, kNaN};
    if (game == RegionalGame::kCournot) {
      const NashCournotSolution nc = nash_cournot(sub);
      out.contested_cournot = nc;
      if (nc.viable) {
        q = {nc.q1, nc.q2};
        p = {nc.price, nc.price};
      } else {
        std::array<bool, 2> out_of_market{};
        for (Viability v : nc.violations) {
          if (v == Viability::kSp1Profit || v == Viability::kSp1QuantitySign) out_of_market[0] = true;
          if (v == Viability::kSp2Profit || v == Viability::kSp2QuantitySign) out_of_market[1] = true;
        }
        out.warnings.push_back("contested Nash-Cournot not viable; driven-out SPs exit the region");
        if (out_of_market[0] != out_of_market[1]) {
          const Sp stays = out_of_market[0] ? Sp::kTwo : Sp::kOne;
          const Outcome m = monopoly_solution(sub.cost(stays), sub.market);
          q[idx(stays)] = m.quantity;
          p[idx(stays)] = m.price;
        }
      }
    } else {
      const BertrandOutcome b = bertrand_basic(sub, undercut);
      out.contested_bertrand = b;
      q = b.quantities;
      p = b.prices;
    }
    for (Sp sp : {Sp::kOne, Sp::kTwo}) {
      const std::size_t i = idx(sp);
      cc.price[i] = p[i];
      cc.quantity[i] = q[i];
      if (q[i] > 0.0) variable[i] += q[i] * (p[i] - d.cost(sp).unit);
    }
  }

  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    const std::size_t i = idx(sp);
    double sold = 0.0;
    for (const ClassOutcome& co : out.classes) sold += co.quantity[i];
    out.participating[i] = sold > 0.0;
    out.profits[i] = out.participating[i] ? variable[i] - regional_fixed_cost(s, d, sp) : 0.0;
    if (out.participating[i] && !participates(out.profits[i])) {
      out.warnings.push_back(fmt::format("sp{} loses money across its footprint", i + 1));
    }
  }
  return out;
}

}  // namespace infrashare
