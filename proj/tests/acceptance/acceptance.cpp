// Acceptance checks against the published running example. Prints one
// PASS/FAIL line per criterion and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "../oracles.hpp"
#include "infrashare/analysis.hpp"
#include "infrashare/bertrand.hpp"
#include "infrashare/cournot.hpp"
#include "infrashare/kernels.hpp"
#include "infrashare/market.hpp"
#include "infrashare/multiregion.hpp"
#include "infrashare/result_io.hpp"
#include "infrashare/scenario_config.hpp"
#include "infrashare/sharing.hpp"

using namespace infrashare;

namespace {

// Collects the sub-checks of one criterion.
class Check {
 public:
  // 1% relative or half a unit in the last printed digit, whichever is looser.
  void printed(const std::string& what, double value, double printed, int decimals) {
    const double tol = std::max(0.01 * std::abs(printed), 0.5 * std::pow(10.0, -decimals));
    record(what, std::abs(value - printed) <= tol,
           fmt::format("{} = {:.4f}, expected {} (tol {:.3g})", what, value, printed, tol));
  }

  void within(const std::string& what, double value, double expected, double tol) {
    record(what, std::abs(value - expected) <= tol,
           fmt::format("{} = {:.10g}, expected {} (tol {:.3g})", what, value, expected, tol));
  }

  void relative(const std::string& what, double value, double expected, double rel) {
    const double tol = rel * std::max(std::abs(expected), 1e-300);
    record(what, std::abs(value - expected) <= tol,
           fmt::format("{} = {:.10g}, expected {:.10g} (rel {:.1g})", what, value, expected, rel));
  }

  void truth(const std::string& what, bool ok, const std::string& detail = "") {
    record(what, ok, detail.empty() ? what : fmt::format("{}: {}", what, detail));
  }

  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  int count() const { return count_; }

 private:
  void record(const std::string&, bool ok, const std::string& detail) {
    ++count_;
    if (!ok) failures_.push_back(detail);
  }

  std::vector<std::string> failures_;
  int count_ = 0;
};

int g_failed = 0;

void criterion(int n, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.truth("no exception", false, e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.ok()) {
    std::printf("PASS criterion %d: %s (%d checks, %.2fs)\n", n, title.c_str(), c.count(), secs);
  } else {
    ++g_failed;
    std::printf("FAIL criterion %d: %s (%zu of %d checks failed, %.2fs)\n", n, title.c_str(),
                c.failures().size(), c.count(), secs);
    for (const std::string& f : c.failures()) std::printf("    %s\n", f.c_str());
  }
  std::fflush(stdout);
}

const Duopoly kExample{{50.0, 2.5}, {100.0, 2.0}, {1000.0, 1.25}};

Duopoly to_duopoly(const oracle::Params& p) {
  return {{p.c1.alpha, p.c1.beta}, {p.c2.alpha, p.c2.beta}, {p.m.Q, p.m.eps}};
}

oracle::Params to_params(const Duopoly& d) {
  return {{d.market.demand_scale, d.market.elasticity},
          {d.sp1.fixed, d.sp1.unit},
          {d.sp2.fixed, d.sp2.unit}};
}

void property_suite(Check& c, const Duopoly& d, const std::string& tag) {
  const NashCournotSolution nc = nash_cournot(d);
  c.truth(tag + " viable", nc.viable);
  if (!nc.viable) return;

  c.relative(tag + " BR1(q2*)", best_response(nc.q2, d.sp1, d.market), nc.q1, 1e-6);
  c.relative(tag + " BR2(q1*)", best_response(nc.q1, d.sp2, d.market), nc.q2, 1e-6);

  const double h1 = 1e-6 * nc.q1;
  const double h2 = 1e-6 * nc.q2;
  const double g1 = (profit(nc.q1 + h1, nc.q2, d.sp1, d.market) -
                     profit(nc.q1 - h1, nc.q2, d.sp1, d.market)) / (2.0 * h1);
  const double g2 = (profit(nc.q2 + h2, nc.q1, d.sp2, d.market) -
                     profit(nc.q2 - h2, nc.q1, d.sp2, d.market)) / (2.0 * h2);
  c.within(tag + " dPi1/dq1 at NE", g1, 0.0, 1e-4);
  c.within(tag + " dPi2/dq2 at NE", g2, 0.0, 1e-4);

  for (ShapleyBasis basis : {ShapleyBasis::kWithoutExternalities, ShapleyBasis::kWithExternalities}) {
    for (bool regulated : {false, true}) {
      const SharingOutcome s = regulated ? sharing_regulated(d, basis) : sharing_monopoly(d, basis);
      const SharingOutcome w =
          regulated ? sharing_regulated(d.swapped(), basis) : sharing_monopoly(d.swapped(), basis);
      const std::string name = fmt::format("{} shapley[{}{}]", tag, regulated ? "reg," : "",
                                           basis == ShapleyBasis::kWithoutExternalities ? "mon" : "nc");
      c.within(name + " efficiency", s.split[0] + s.split[1], s.combined_profit, 1e-9);
      c.within(name + " symmetry 1", s.split[0], w.split[1], 1e-9);
      c.within(name + " symmetry 2", s.split[1], w.split[0], 1e-9);
    }
  }

  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double p = std::pow(10.0, -1.0 + 4.0 * i / 200.0);
    worst = std::max(worst, std::abs(inverse_demand(demand(p, d.market), d.market) - p) / p);
  }
  c.within(tag + " demand round trip", worst, 0.0, 1e-10);

  const oracle::Params op = to_params(d);
  const double qmax = 3.0 * std::max(oracle::monopoly_quantity(op.c1, op.m),
                                     oracle::monopoly_quantity(op.c2, op.m));
  const oracle::GridEquilibrium ge = oracle::grid_dynamics(op, qmax, 300);
  c.truth(tag + " grid dynamics converged", ge.converged);
  c.within(tag + " grid NE q1", ge.q1, nc.q1, 2.0 * ge.step);
  c.within(tag + " grid NE q2", ge.q2, nc.q2, 2.0 * ge.step);

  const BertrandOutcome b = bertrand_basic(d);
  if (b.regime == BertrandRegime::kDriveOut) {
    const std::size_t w = b.participating[0] ? 0 : 1;
    const std::size_t l = 1 - w;
    const double p_hi = 5.0 * std::max(monopoly_price(d.sp1, d.market), monopoly_price(d.sp2, d.market));
    double best = -1e300;
    for (int i = 1; i <= 10000; ++i) {
      const double p = p_hi * i / 10000.0;
      std::array<double, 2> prices{};
      prices[w] = b.prices[w];
      prices[l] = p;
      best = std::max(best, evaluate_prices(d, {1.0}, prices).profits[l]);
    }
    c.truth(tag + " drive-out optimal", best <= 0.0,
            fmt::format("loser's best grid profit {:.6g}", best));
  }
}

}  // namespace

int main() {
  criterion(1, "monopoly outcomes", [](Check& c) {
    const Outcome m1 = monopoly_solution(kExample.sp1, kExample.market);
    const Outcome m2 = monopoly_solution(kExample.sp2, kExample.market);
    c.printed("p1", m1.price, 12.5, 1);
    c.printed("q1", m1.quantity, 42.6, 1);
    c.printed("Pi1", m1.profit, 376, 0);
    c.printed("p2", m2.price, 10.0, 1);
    c.printed("q2", m2.quantity, 56.2, 1);
    c.printed("Pi2", m2.profit, 350, 0);
  });

  criterion(2, "Nash-Cournot equilibrium", [](Check& c) {
    const NashCournotSolution nc = nash_cournot(kExample);
    c.printed("q1", nc.q1, 80, 0);
    c.printed("q2", nc.q2, 112, 0);
    c.printed("p", nc.price, 3.75, 2);
    c.printed("Pi1", nc.profit1, 50, 0);
    c.printed("Pi2", nc.profit2, 96, 0);
    c.within("t", nc.t, 1.4, 1e-9);
    c.truth("viable", nc.viable);
  });

  criterion(3, "sharing with monopoly pricing", [](Check& c) {
    const SharingOutcome s = sharing_monopoly(kExample, ShapleyBasis::kWithoutExternalities);
    c.printed("Pi_coop", s.combined_profit, 400, 0);
    c.printed("split1", s.split[0], 213, 0);
    c.printed("split2", s.split[1], 187, 0);
  });

  criterion(4, "regulated sharing", [](Check& c) {
    for (ShapleyBasis b : {ShapleyBasis::kWithoutExternalities, ShapleyBasis::kWithExternalities}) {
      const std::string tag = b == ShapleyBasis::kWithoutExternalities ? "[mon] " : "[nc] ";
      const SharingOutcome s = sharing_regulated(kExample, b);
      c.printed(tag + "p", s.price, 3.75, 2);
      c.printed(tag + "q", s.quantity, 192, 0);
      c.printed(tag + "Pi", s.combined_profit, 286, 0);
      c.printed(tag + "split1", s.split[0], 120, 0);
      c.printed(tag + "split2", s.split[1], 166, 0);
    }
  });

  criterion(5, "price/profit summary table", [](Check& c) {
    const NashCournotSolution nc = nash_cournot(kExample);
    const SharingOutcome s = sharing_monopoly(kExample, ShapleyBasis::kWithoutExternalities);
    const SharingOutcome r = sharing_regulated(kExample, ShapleyBasis::kWithoutExternalities);
    c.printed("NC price", nc.price, 3.75, 2);
    c.printed("NC Pi1", nc.profit1, 50, 0);
    c.printed("NC Pi2", nc.profit2, 96, 0);
    c.printed("sharing price", s.price, 10, 0);
    c.printed("sharing Pi1", s.split[0], 213, 0);
    c.printed("sharing Pi2", s.split[1], 187, 0);
    c.printed("regulated price", r.price, 3.75, 2);
    c.printed("regulated Pi1", r.split[0], 120, 0);
    c.printed("regulated Pi2", r.split[1], 166, 0);
  });

  criterion(6, "strategy payoff table", [](Check& c) {
    const SharingOutcome s = sharing_monopoly(kExample, ShapleyBasis::kWithoutExternalities);
    const SharingOutcome r = sharing_regulated(kExample, ShapleyBasis::kWithoutExternalities);
    const PayoffTable t = payoff_table(kExample, SharingCell{s.split[0], s.split[1]},
                                       SharingCell{r.split[0], r.split[1]});
    const double expected[3][3][2] = {{{50, 96}, {-1, 80}, {353, 0}},
                                      {{9, -1}, {-48, -17}, {254, 0}},
                                      {{0, 321}, {0, 271}, {0, 0}}};
    for (Strategy s1 : kStrategies) {
      for (Strategy s2 : kStrategies) {
        const PayoffCell& cell = t.at(s1, s2);
        const auto* e = expected[static_cast<int>(s1)][static_cast<int>(s2)];
        const std::string name = fmt::format("({},{})", to_string(s1), to_string(s2));
        c.truth(name + " available", cell.available, cell.note);
        c.printed(name + " Pi1", cell.profit1, e[0], 0);
        c.printed(name + " Pi2", cell.profit2, e[1], 0);
      }
    }
    c.printed("sharing Pi1", t.sharing_unregulated->profit1, 213, 0);
    c.printed("sharing Pi2", t.sharing_unregulated->profit2, 187, 0);
    c.printed("regulated Pi1", t.sharing_regulated->profit1, 120, 0);
    c.printed("regulated Pi2", t.sharing_regulated->profit2, 166, 0);
    const AggressionResult a = aggression_quantity(Sp::kOne, kExample);
    c.relative("drive-out threshold q1'", a.quantity, 154, 0.01);
  });

  criterion(7, "basic Bertrand example", [](Check& c) {
    const BertrandOutcome b = bertrand_basic(kExample, 0.01);
    c.within("p_lo1", b.ranges[0].lo, 2.68, 0.01);
    c.within("p_lo2", b.ranges[1].lo, 2.28, 0.01);
    c.truth("regime drive-out", b.regime == BertrandRegime::kDriveOut, to_string(b.regime));
    c.printed("p2", b.prices[1], 2.67, 2);
    c.printed("q2", b.quantities[1], 293, 0);
    c.printed("Pi2", b.profits[1], 96.3, 1);
    c.within("q1", b.quantities[0], 0.0, 0.0);
    c.within("Pi1", b.profits[0], 0.0, 0.0);
  });

  criterion(8, "two-region scenarios", [](Check& c) {
    RegionScenario s1;
    const RegionalOutcome st = regional_standalone(s1, kExample);
    c.printed("S1 standalone Pi1", st.profits[0], 116.82, 2);
    c.printed("S1 standalone Pi2", st.profits[1], 99.96, 2);
    const RegionalOutcome co = regional_cooperation(s1, kExample);
    c.printed("S1 coop split1", co.profits[0], 189.43, 2);
    c.printed("S1 coop split2", co.profits[1], 172.57, 2);

    RegionScenario s2;
    s2.footprint[1] = {true, true};
    const RegionalOutcome cn = regional_competition(s2, kExample, RegionalGame::kCournot);
    c.printed("S2 Cournot Pi1", cn.profits[0], 8.28, 2);
    c.printed("S2 Cournot Pi2", cn.profits[1], 265, 0);
    const RegionalOutcome bt = regional_competition(s2, kExample, RegionalGame::kBertrand);
    c.printed("S2 Bertrand Pi1", bt.profits[0], 0, 0);
    c.printed("S2 Bertrand Pi2", bt.profits[1], 272, 0);
    const RegionalOutcome c2 = regional_cooperation(s2, kExample);
    c.printed("S2 coop split1", c2.profits[0], 64.5, 1);
    c.printed("S2 coop split2", c2.profits[1], 297.5, 1);
  });

  criterion(9, "property suites on the preset and 10 random draws", [](Check& c) {
    property_suite(c, kExample, "preset");
    const auto draws = oracle::random_viable(10);
    for (std::size_t i = 0; i < draws.size(); ++i) {
      property_suite(c, to_duopoly(draws[i]), fmt::format("draw{}", i));
    }

    ScenarioSpec spec = parse_scenario(preset_text("paper"));
    spec.analyses = parse_analysis_list("all", false);
    spec.informed = 0.5;
    c.truth("solve output byte-identical",
            render_json(run_analyses(spec)) == render_json(run_analyses(spec)));
    spec.sweep = {{"sp1.alpha", 10, 200, 12}, {"market.epsilon", 1.1, 2.0, 4}};
    spec.analyses = parse_analysis_list("cournot,sharing,bertrand", false);
    const std::string serial = render_csv(run_sweep(spec, Execution::kSerial));
    c.truth("sweep parallel == serial", render_csv(run_sweep(spec, Execution::kParallel)) == serial);
    c.truth("sweep rerun identical", render_csv(run_sweep(spec, Execution::kParallel)) == serial);
    spec.sweep.clear();
    for (CurveKind k : {CurveKind::kBestResponse, CurveKind::kProfitVsQ1, CurveKind::kProfitVsQ2,
                        CurveKind::kProfitVsPrice}) {
      c.truth("curve " + to_string(k) + " parallel == serial",
              render_csv(sample_curve(spec, k, 301, Execution::kParallel)) ==
                  render_csv(sample_curve(spec, k, 301, Execution::kSerial)));
    }
  });

  criterion(10, "informed-fraction stable solution", [](Check& c) {
    for (double informed : {0.25, 0.5, 0.75}) {
      const InformedFraction f{informed};
      const BertrandOutcome o = bertrand_informed(kExample, f);
      const std::string tag = fmt::format("I={}", informed);
      c.truth(tag + " regime", o.regime == BertrandRegime::kInformedSplit, to_string(o.regime));
      if (o.regime != BertrandRegime::kInformedSplit) continue;
      const std::size_t hi = o.prices[0] > o.prices[1] ? 0 : 1;
      const std::size_t lo = 1 - hi;

      // Stable solution: given the low price, no other high-role price helps.
      const double top = 5.0 * std::max(monopoly_price(kExample.sp1, kExample.market),
                                        monopoly_price(kExample.sp2, kExample.market));
      double best = 0.0;
      for (int i = 1; i <= 10000; ++i) {
        std::array<double, 2> prices{};
        prices[lo] = o.prices[lo];
        prices[hi] = top * i / 10000.0;
        best = std::max(best, evaluate_prices(kExample, f, prices).profits[hi]);
      }
      c.truth(tag + " stable", best <= o.profits[hi] + 1e-6 * std::max(1.0, std::abs(o.profits[hi])),
              fmt::format("best deviation {:.9g} vs {:.9g}", best, o.profits[hi]));

      // Two-stage game on a 500-point grid, low-price SP leading.
      const double g_lo = std::min(kExample.sp1.unit, kExample.sp2.unit);
      const double step = (top - g_lo) / 499.0;
      double leader_best = -1e300;
      std::array<double, 2> spe{};
      for (int a = 0; a < 500; ++a) {
        std::array<double, 2> prices{};
        prices[lo] = g_lo + step * a;
        double follower_best = 0.0;  // staying out
        double follower_price = -1.0;
        for (int b = 0; b < 500; ++b) {
          prices[hi] = g_lo + step * b;
          const double v = evaluate_prices(kExample, f, prices).profits[hi];
          if (v > follower_best) {
            follower_best = v;
            follower_price = prices[hi];
          }
        }
        std::array<bool, 2> present{true, true};
        present[hi] = follower_price > 0.0;
        prices[hi] = present[hi] ? follower_price : prices[lo];
        const double leader = evaluate_prices(kExample, f, prices, present).profits[lo];
        if (leader > leader_best) {
          leader_best = leader;
          spe = prices;
        }
      }
      c.within(tag + " Stackelberg low price", spe[lo], o.prices[lo], step * 1.0000001);
      c.within(tag + " Stackelberg high price", spe[hi], o.prices[hi], step * 1.0000001);
    }

    const BertrandOutcome basic = bertrand_basic(kExample);
    const BertrandOutcome limit = bertrand_informed(kExample, {0.999});
    const std::size_t w = basic.participating[0] ? 0 : 1;
    c.relative("I->1 winner price", limit.prices[w], basic.prices[w], 0.02);
    c.relative("I->1 winner profit", limit.profits[w], basic.profits[w], 0.02);
    c.truth("I->1 loser out", limit.quantities[1 - w] <= 0.02 * limit.quantities[w]);
  });

  std::printf("%s: %d criteria failed\n", g_failed ? "FAILED" : "OK", g_failed);
  return g_failed ? 1 : 0;
}
