#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "infrashare/bertrand.hpp"
#include "infrashare/cournot.hpp"
#include "infrashare/market.hpp"

namespace infrashare {

/// Regions an SP can serve.
struct Footprint {
  bool west = false;
  bool east = false;

  bool empty() const { return !west && !east; }
  bool national() const { return west && east; }
  int regions() const { return int(west) + int(east); }
  bool operator==(const Footprint&) const = default;
};

enum class UserClass { kWest = 0, kEast = 1, kBoth = 2 };

inline constexpr std::array<UserClass, 3> kUserClasses = {UserClass::kWest, UserClass::kEast,
                                                          UserClass::kBoth};

std::string to_string(UserClass c);

/// Fractions of the user population in each class; they sum to one.
struct UserFractions {
  double west = 1.0 / 3.0;
  double east = 1.0 / 3.0;
  double both = 1.0 / 3.0;

  double of(UserClass c) const;
  bool operator==(const UserFractions&) const = default;
};

/// How an SP's fixed cost scales with its footprint.
enum class AlphaRule {
  kPerRegion,  // alpha/2 per region covered
  kFull,       // alpha regardless of footprint
};

/// Which costs the combined entity builds each region with.
enum class CoopBuilder {
  kLocal,     // the SP covering only that region builds it, else the sole coverer
  kCheapest,  // componentwise cheapest costs among SPs covering the region
};

struct RegionScenario {
  std::array<Footprint, 2> footprint{Footprint{true, false}, Footprint{false, true}};
  UserFractions users;
  AlphaRule alpha_rule = AlphaRule::kPerRegion;
  CoopBuilder coop_builder = CoopBuilder::kLocal;

  bool operator==(const RegionScenario&) const = default;
};

/// Throws Error(kInvalidParameter) on bad fractions or an empty footprint.
void validate(const RegionScenario& s);

/// The fixed cost SP `sp` pays for its whole footprint under the scenario rule.
double regional_fixed_cost(const RegionScenario& s, const Duopoly& d, Sp sp);

struct ClassOutcome {
  UserClass user_class = UserClass::kWest;
  double mass = 0.0;  // fraction of users
  std::array<double, 2> price{};     // per SP; NaN where the SP does not sell
  std::array<double, 2> quantity{};  // per SP
  double combined_quantity = 0.0;    // cooperative scenarios only
  bool unservable = false;           // no SP (or coalition) reaches the class
};

enum class RegionalGame { kCournot, kBertrand };

struct RegionalOutcome {
  std::array<ClassOutcome, 3> classes{};
  std::array<double, 2> profits{};
  std::array<bool, 2> participating{};
  std::optional<double> combined_price;
  std::optional<double> combined_quantity;
  std::optional<double> combined_profit;
  std::optional<std::array<double, 2>> split;
  std::optional<NashCournotSolution> contested_cournot;
  std::optional<BertrandOutcome> contested_bertrand;
  std::vector<std::string> warnings;

  const ClassOutcome& of(UserClass c) const { return classes[static_cast<std::size_t>(c)]; }
};

/// Each SP alone, as a monopolist over the classes its footprint reaches.
/// Footprints must be disjoint (Error(kWrongScenario) otherwise).
RegionalOutcome regional_standalone(const RegionScenario& s, const Duopoly& d);

/// The standalone monopoly values used as Shapley singletons. Unlike
/// regional_standalone this accepts overlapping footprints.
std::array<Outcome, 2> standalone_monopolies(const RegionScenario& s, const Duopoly& d);

/// Combined entity charges one price to every class it reaches, with each
/// class served at its builder's unit cost; profit split by Shapley against
/// the standalone monopolies.
RegionalOutcome regional_cooperation(const RegionScenario& s, const Duopoly& d);

/// Overlapping footprints: captive classes priced by their sole server, the
/// shared region contested through the chosen game.
RegionalOutcome regional_competition(const RegionScenario& s, const Duopoly& d,
                                     RegionalGame game, double undercut = kDefaultUndercut);

}  // namespace infrashare
