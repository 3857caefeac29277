#pragma once

#include <array>

#include "infrashare/cournot.hpp"
#include "infrashare/market.hpp"

namespace infrashare {

enum class SharingPricing { kMonopoly, kRegulatedNash };

/// Basis for the singleton coalition value in the two-player Shapley split:
/// the SP alone either prices as a monopolist or still faces Cournot rivalry.
enum class ShapleyBasis { kWithoutExternalities, kWithExternalities };

struct SharingMode {
  SharingPricing pricing = SharingPricing::kMonopoly;
  ShapleyBasis shapley = ShapleyBasis::kWithoutExternalities;
};

struct SharingOutcome {
  double price = 0.0;
  double quantity = 0.0;  // combined
  double combined_profit = 0.0;
  std::array<double, 2> split{};
  SharingMode mode;
  bool participating = false;
  bool negative_share = false;  // a Shapley share came out below zero
};

/// Componentwise cheapest cost parameters available to the combined entity.
CostParams coop_cost_params(const Duopoly& d);

/// Two-player Shapley value: each player receives half of its own standalone
/// value plus half of the coalition's surplus over the other's standalone.
std::array<double, 2> shapley_split(double standalone1, double standalone2,
                                    double coalition);

/// Combined entity prices as a monopolist on the cheapest costs.
/// Throws Error(kExternalityBasis) for the Nash-Cournot basis when the
/// equilibrium is not viable.
SharingOutcome sharing_monopoly(const Duopoly& d, ShapleyBasis basis);

/// Combined entity held to the Nash-Cournot price.
/// Throws Error(kNoCap) when the equilibrium is not viable.
SharingOutcome sharing_regulated(const Duopoly& d, ShapleyBasis basis);

}  // namespace infrashare
