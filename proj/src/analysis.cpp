#include "infrashare/analysis.hpp"

#include <cmath>

#include <fmt/format.h>

#include "infrashare/errors.hpp"

namespace infrashare {
namespace {

template <typename Fn>
void guarded(ResultDocument& doc, const std::string& name, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    doc.failures.push_back({name, std::string(to_string(e.code())), e.what()});
  } catch (const std::exception& e) {
    doc.failures.push_back({name, "internal", e.what()});
  }
}

void add_warnings(ResultDocument& doc, const std::string& prefix,
                  const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) doc.warnings.push_back(fmt::format("{}: {}", prefix, w));
}

void run_regions(ResultDocument& doc, const ScenarioSpec& spec) {
  const RegionScenario& s = *spec.regions;
  const Duopoly& d = spec.duopoly;
  RegionsResult r;
  r.overlapping = (s.footprint[0].west && s.footprint[1].west) ||
                  (s.footprint[0].east && s.footprint[1].east);
  r.standalone_monopolies = standalone_monopolies(s, d);
  if (!r.overlapping) {
    guarded(doc, "regions.standalone", [&] { r.standalone = regional_standalone(s, d); });
  }
  const bool covered = (s.footprint[0].west || s.footprint[1].west) &&
                       (s.footprint[0].east || s.footprint[1].east);
  if (covered) {
    guarded(doc, "regions.cooperation", [&] {
      r.cooperation = regional_cooperation(s, d);
      add_warnings(doc, "regions.cooperation", r.cooperation->warnings);
    });
  } else {
    doc.warnings.push_back("regions.cooperation: skipped, the footprints leave a region uncovered");
  }
  if (r.overlapping) {
    const bool cournot = !spec.regional_game || *spec.regional_game == RegionalGame::kCournot;
    const bool bertrand = !spec.regional_game || *spec.regional_game == RegionalGame::kBertrand;
    if (cournot) {
      guarded(doc, "regions.cournot", [&] {
        r.cournot = regional_competition(s, d, RegionalGame::kCournot, spec.undercut);
        add_warnings(doc, "regions.cournot", r.cournot->warnings);
      });
    }
    if (bertrand) {
      guarded(doc, "regions.bertrand", [&] {
        r.bertrand = regional_competition(s, d, RegionalGame::kBertrand, spec.undercut);
        add_warnings(doc, "regions.bertrand", r.bertrand->warnings);
      });
    }
  }
  doc.regions = std::move(r);
}

}  // namespace

ResultDocument run_analyses(const ScenarioSpec& spec) {
  validate(spec);
  ResultDocument doc;
  doc.scenario = spec;
  const Duopoly& d = spec.duopoly;
  AggressionOptions agg_opts;
  agg_opts.solver = spec.solver;
  const InformedFraction informed{spec.informed.value_or(1.0)};

  for (Analysis a : spec.analyses) {
    const std::string name = to_string(a);
    switch (a) {
      case Analysis::kMonopoly:
        guarded(doc, name, [&] {
          doc.monopoly = std::array<Outcome, 2>{monopoly_solution(d.sp1, d.market),
                                                monopoly_solution(d.sp2, d.market)};
        });
        break;
      case Analysis::kCournot:
        guarded(doc, name, [&] {
          const NashCournotSolution nc = nash_cournot(d);
          doc.cournot = nc;
          if (!nc.viable) {
            for (Viability v : nc.violations) {
              doc.warnings.push_back(fmt::format("cournot: not viable ({})", to_string(v)));
            }
            return;
          }
          CournotDiagnostics diag;
          diag.best_response_residual = {
              std::abs(best_response(nc.q2, d.sp1, d.market, spec.solver) - nc.q1),
              std::abs(best_response(nc.q1, d.sp2, d.market, spec.solver) - nc.q2)};
          doc.cournot_diagnostics = diag;
        });
        break;
      case Analysis::kAggression: {
        std::array<AggressionEntry, 2> entries;
        for (Sp sp : {Sp::kOne, Sp::kTwo}) {
          try {
            entries[idx(sp)].result = aggression_quantity(sp, d, agg_opts);
          } catch (const Error& e) {
            entries[idx(sp)].error = e.what();
            doc.failures.push_back({fmt::format("aggression.sp{}", idx(sp) + 1),
                                    std::string(to_string(e.code())), e.what()});
          }
        }
        doc.aggression = entries;
        break;
      }
      case Analysis::kPayoffTable:
        guarded(doc, name, [&] {
          std::optional<SharingCell> unreg;
          std::optional<SharingCell> reg;
          try {
            const SharingOutcome s = sharing_monopoly(d, spec.shapley);
            unreg = SharingCell{s.split[0], s.split[1]};
          } catch (const Error& e) {
            doc.warnings.push_back(fmt::format("payoff-table: no unregulated sharing cell ({})",
                                               e.what()));
          }
          try {
            const SharingOutcome s = sharing_regulated(d, spec.shapley);
            reg = SharingCell{s.split[0], s.split[1]};
          } catch (const Error& e) {
            doc.warnings.push_back(fmt::format("payoff-table: no regulated sharing cell ({})",
                                               e.what()));
          }
          doc.payoff_table = payoff_table(d, unreg, reg, agg_opts);
          for (Strategy s1 : kStrategies) {
            for (Strategy s2 : kStrategies) {
              const PayoffCell& c = doc.payoff_table->at(s1, s2);
              if (!c.available) {
                doc.warnings.push_back(fmt::format("payoff-table: cell ({}, {}) unavailable: {}",
                                                   to_string(s1), to_string(s2), c.note));
              }
            }
          }
        });
        break;
      case Analysis::kSharing:
        guarded(doc, name, [&] {
          doc.sharing = sharing_monopoly(d, spec.shapley);
          if (doc.sharing->negative_share) doc.warnings.push_back("sharing: negative Shapley share");
        });
        break;
      case Analysis::kRegulated:
        guarded(doc, name, [&] {
          doc.regulated = sharing_regulated(d, spec.shapley);
          if (doc.regulated->negative_share) {
            doc.warnings.push_back("regulated: negative Shapley share");
          }
        });
        break;
      case Analysis::kBertrand:
        guarded(doc, name, [&] {
          doc.bertrand = bertrand_basic(d, spec.undercut, spec.solver);
          add_warnings(doc, name, doc.bertrand->warnings);
        });
        break;
      case Analysis::kInformed:
        guarded(doc, name, [&] {
          doc.informed = bertrand_informed(d, informed, spec.solver);
          add_warnings(doc, name, doc.informed->warnings);
        });
        break;
      case Analysis::kSharedCost:
        guarded(doc, name, [&] {
          doc.shared_cost = bertrand_shared_cost(d, informed, spec.solver);
          add_warnings(doc, name, doc.shared_cost->warnings);
        });
        break;
      case Analysis::kRegions:
        guarded(doc, name, [&] { run_regions(doc, spec); });
        break;
    }
  }
  return doc;
}

}  // namespace infrashare
