#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "infrashare/cournot.hpp"
#include "infrashare/errors.hpp"
#include "oracles.hpp"

using namespace infrashare;

namespace {
const Duopoly kExample{{50.0, 2.5}, {100.0, 2.0}, {1000.0, 1.25}};

Duopoly from(const oracle::Params& p) {
  return {{p.c1.alpha, p.c1.beta}, {p.c2.alpha, p.c2.beta}, {p.m.Q, p.m.eps}};
}

bool has(const std::vector<Viability>& v, Viability x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}
}  // namespace

TEST_CASE("best response examples") {
  const auto& m = kExample.market;
  CHECK(best_response(112.0, kExample.sp1, m) == doctest::Approx(79.80198344377851).epsilon(1e-9));
  CHECK(best_response(0.0, kExample.sp1, m) == doctest::Approx(42.546367175559909).epsilon(1e-9));
  CHECK(best_response(1e6, kExample.sp1, m) == 0.0);
  CHECK_FALSE(interior_best_response(1e6, kExample.sp1, m).has_value());
  CHECK(best_response_profit(1e6, kExample.sp1, m) == doctest::Approx(-50.0));
  // Around the equilibrium the replies cross.
  CHECK(best_response(111.783501, kExample.sp1, m) == doctest::Approx(79.845358).epsilon(1e-6));
  CHECK(best_response(79.845358, kExample.sp2, m) == doctest::Approx(111.783501).epsilon(1e-6));
}

TEST_CASE("best response matches grid oracle") {
  const oracle::Params p = oracle::running_example();
  for (double q2 : {0.5, 10.0, 60.0, 112.0, 250.0, 600.0}) {
    const double lib = best_response(q2, kExample.sp1, kExample.market);
    const auto g = oracle::best_reply(q2, p.c1, p.m, 600.0);
    CHECK(lib == doctest::Approx(g.x).epsilon(1e-5));
  }
}

TEST_CASE("running example equilibrium") {
  const NashCournotSolution s = nash_cournot(kExample);
  CHECK(s.t == doctest::Approx(1.4).epsilon(1e-14));
  CHECK(s.q1 == doctest::Approx(79.845358).epsilon(1e-7));
  CHECK(s.q2 == doctest::Approx(111.783501).epsilon(1e-7));
  CHECK(s.price == doctest::Approx(3.75).epsilon(1e-13));
  CHECK(s.q1 + s.q2 == doctest::Approx(191.62885971364492).epsilon(1e-12));
  CHECK(s.profit1 == doctest::Approx(49.8067).epsilon(1e-5));
  CHECK(s.profit2 == doctest::Approx(95.6211).epsilon(1e-5));
  CHECK(s.viable);
  CHECK(s.violations.empty());
}

TEST_CASE("symmetric equilibrium") {
  const Duopoly d{{10.0, 2.0}, {10.0, 2.0}, {1000.0, 1.5}};
  const NashCournotSolution s = nash_cournot(d);
  CHECK(s.t == doctest::Approx(1.0));
  CHECK(s.q1 == doctest::Approx(s.q2).epsilon(1e-12));
  // Symmetric Cournot price: beta / (1 - 1/(2 eps)).
  CHECK(s.price == doctest::Approx(2.0 / (1.0 - 1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("viability violations") {
  Duopoly both = kExample;
  both.sp1.fixed = both.sp2.fixed = 1e6;
  const NashCournotSolution a = nash_cournot(both);
  CHECK_FALSE(a.viable);
  CHECK(has(a.violations, Viability::kSp1Profit));
  CHECK(has(a.violations, Viability::kSp2Profit));

  Duopoly only2 = kExample;
  only2.sp2.fixed = 1e6;
  const NashCournotSolution b = nash_cournot(only2);
  CHECK_FALSE(b.viable);
  CHECK(b.violations == std::vector<Viability>{Viability::kSp2Profit});

  Duopoly ratio = kExample;
  ratio.sp1.unit = 10.0;
  ratio.sp2.unit = 1.0;
  const NashCournotSolution c = nash_cournot(ratio);
  CHECK_FALSE(c.viable);
  CHECK(has(c.violations, Viability::kCostRatio));
  CHECK(has(c.violations, Viability::kSp1QuantitySign));
}

TEST_CASE("degenerate cost ratio") {
  Duopoly d = kExample;
  d.sp1.unit = 2.5;
  d.sp2.unit = 2.5 * (1.0 - 1.0 / 1.25);
  try {
    nash_cournot(d);
    FAIL("expected kDegenerateEquilibrium");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateEquilibrium);
  }
}

TEST_CASE("aggression quantities") {
  const AggressionResult a1 = aggression_quantity(Sp::kOne, kExample);
  const AggressionResult a2 = aggression_quantity(Sp::kTwo, kExample);
  CHECK(a1.quantity == doctest::Approx(153.39769).epsilon(1e-7));
  CHECK(a2.quantity == doctest::Approx(162.49862).epsilon(1e-7));
  CHECK_FALSE(a1.monopoly_branch);
  REQUIRE(a1.threshold.has_value());
  CHECK(*a1.threshold == a1.quantity);
  CHECK(a1.victim_profit_at <= 1e-9);

  // Independent threshold: where the victim's grid best-reply profit hits zero.
  const oracle::Params p = oracle::running_example();
  auto victim = [&](double q1) {
    const double g = oracle::zoom_max(
        [&](double q) { return oracle::cournot_profit(q, q1, p.c2, p.m); }, 1e-9, 1000.0).value;
    return g;
  };
  const double th = oracle::bisect(victim, 100.0, 300.0);
  CHECK(a1.quantity == doctest::Approx(th).epsilon(1e-6));
}

TEST_CASE("drive-out boundary") {
  const AggressionResult a1 = aggression_quantity(Sp::kOne, kExample);
  const double q = a1.quantity;
  const double delta = 1e-6 * q;
  CHECK(best_response_profit(q - delta, kExample.sp2, kExample.market) > 0.0);
  CHECK(best_response_profit(q + delta, kExample.sp2, kExample.market) < 0.0);
}

TEST_CASE("aggression unavailable without a victim fixed cost") {
  Duopoly d = kExample;
  d.sp2.fixed = 0.0;
  try {
    aggression_quantity(Sp::kOne, d);
    FAIL("expected kNoDriveOut");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoDriveOut);
  }
}

TEST_CASE("aggression takes the monopoly branch for a weak victim") {
  Duopoly d = kExample;
  d.sp2.fixed = 340.0;
  const AggressionResult a = aggression_quantity(Sp::kOne, d);
  const Outcome mon = monopoly_solution(d.sp1, d.market);
  CHECK(a.monopoly_branch);
  CHECK(a.quantity == doctest::Approx(mon.quantity).epsilon(1e-9));
}

TEST_CASE("payoff table consistency") {
  const PayoffTable t = payoff_table(kExample);
  const NashCournotSolution ne = nash_cournot(kExample);
  const double a1 = aggression_quantity(Sp::kOne, kExample).quantity;
  const double a2 = aggression_quantity(Sp::kTwo, kExample).quantity;
  const auto& m = kExample.market;
  for (Strategy s1 : kStrategies) {
    for (Strategy s2 : kStrategies) {
      const PayoffCell& c = t.at(s1, s2);
      REQUIRE(c.available);
      const double q1 = s1 == Strategy::kNashCournot ? ne.q1 : s1 == Strategy::kAggression ? a1 : 0.0;
      const double q2 = s2 == Strategy::kNashCournot ? ne.q2 : s2 == Strategy::kAggression ? a2 : 0.0;
      CHECK(c.q1 == doctest::Approx(q1));
      CHECK(c.q2 == doctest::Approx(q2));
      CHECK(c.profit1 == doctest::Approx(profit(q1, q2, kExample.sp1, m)));
      CHECK(c.profit2 == doctest::Approx(profit(q2, q1, kExample.sp2, m)));
      const bool nc_vs_sub = (s1 == Strategy::kNashCournot && s2 == Strategy::kSubmission) ||
                             (s1 == Strategy::kSubmission && s2 == Strategy::kNashCournot);
      CHECK(c.non_viable_outcome == nc_vs_sub);
    }
  }
  CHECK(t.at(Strategy::kNashCournot, Strategy::kNashCournot).profit1 ==
        doctest::Approx(ne.profit1));
  CHECK(t.at(Strategy::kSubmission, Strategy::kSubmission).profit1 == 0.0);
  CHECK(t.at(Strategy::kSubmission, Strategy::kAggression).profit2 == doctest::Approx(270.3).epsilon(1e-3));
  CHECK_FALSE(t.sharing_unregulated.has_value());
}

TEST_CASE("payoff table copies sharing cells") {
  const PayoffTable t = payoff_table(kExample, SharingCell{1.0, 2.0}, SharingCell{3.0, 4.0});
  REQUIRE(t.sharing_unregulated.has_value());
  CHECK(t.sharing_unregulated->profit2 == 2.0);
  CHECK(t.sharing_regulated->profit1 == 3.0);
}

TEST_CASE("equilibrium is a fixed point on random markets") {
  for (const auto& p : oracle::random_viable(25)) {
    const Duopoly d = from(p);
    const NashCournotSolution s = nash_cournot(d);
    REQUIRE(s.viable);
    CHECK(best_response(s.q2, d.sp1, d.market) == doctest::Approx(s.q1).epsilon(1e-7));
    CHECK(best_response(s.q1, d.sp2, d.market) == doctest::Approx(s.q2).epsilon(1e-7));
    CHECK(s.q2 / s.q1 == doctest::Approx(s.t).epsilon(1e-10));
    // Stationarity: no unilateral deviation on a coarse grid improves profit.
    for (int i = 1; i <= 40; ++i) {
      const double dev = s.q1 * i / 20.0;
      CHECK(profit(dev, s.q2, d.sp1, d.market) <= s.profit1 + 1e-9 * std::abs(s.profit1) + 1e-9);
    }
  }
}

TEST_CASE("equilibrium agrees with grid dynamics") {
  for (const auto& p : oracle::random_viable(4, 7)) {
    const Duopoly d = from(p);
    const NashCournotSolution s = nash_cournot(d);
    const double qmax = 3.0 * std::max(oracle::monopoly_quantity(p.c1, p.m),
                                       oracle::monopoly_quantity(p.c2, p.m));
    const oracle::GridEquilibrium g = oracle::grid_dynamics(p, qmax, 600);
    if (!g.converged) continue;
    CHECK(std::abs(g.q1 - s.q1) <= 3.0 * g.step);
    CHECK(std::abs(g.q2 - s.q2) <= 3.0 * g.step);
  }
}

TEST_CASE("swapping providers swaps the equilibrium") {
  const NashCournotSolution a = nash_cournot(kExample);
  const NashCournotSolution b = nash_cournot(kExample.swapped());
  CHECK(a.q1 == doctest::Approx(b.q2).epsilon(1e-12));
  CHECK(a.profit2 == doctest::Approx(b.profit1).epsilon(1e-12));
  CHECK(b.t == doctest::Approx(1.0 / a.t).epsilon(1e-12));
}
