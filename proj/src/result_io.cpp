#include "infrashare/result_io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace infrashare {
namespace {

using Json = nlohmann::ordered_json;

std::string shapley_name(ShapleyBasis b) {
  return b == ShapleyBasis::kWithoutExternalities ? "mon" : "nc";
}

std::string footprint_name(const Footprint& f) {
  return std::string(f.west ? "W" : "") + (f.east ? "E" : "");
}

Json outcome_json(const Outcome& o) {
  return {{"price", o.price},
          {"quantity", o.quantity},
          {"profit", o.profit},
          {"participating", o.participating}};
}

Json scenario_json(const ScenarioSpec& s) {
  const Duopoly& d = s.duopoly;
  Json j;
  j["market"] = {{"Q", d.market.demand_scale}, {"epsilon", d.market.elasticity}};
  j["sp1"] = {{"alpha", d.sp1.fixed}, {"beta", d.sp1.unit}};
  j["sp2"] = {{"alpha", d.sp2.fixed}, {"beta", d.sp2.unit}};
  Json analyses = Json::array();
  for (Analysis a : s.analyses) analyses.push_back(to_string(a));
  j["analyses"] = analyses;
  j["shapley"] = shapley_name(s.shapley);
  j["informed"] = s.informed ? Json(*s.informed) : Json(nullptr);
  j["undercut"] = s.undercut;
  j["solver"] = {{"rel_tol", s.solver.rel_tol},
                 {"abs_tol", s.solver.abs_tol},
                 {"max_iter", s.solver.max_iter}};
  if (s.regions) {
    const RegionScenario& r = *s.regions;
    j["regions"] = {
        {"sp1", footprint_name(r.footprint[0])},
        {"sp2", footprint_name(r.footprint[1])},
        {"users", {{"W", r.users.west}, {"E", r.users.east}, {"WE", r.users.both}}},
        {"alpha_rule", r.alpha_rule == AlphaRule::kPerRegion ? "per-region" : "full"},
        {"coop_builder", r.coop_builder == CoopBuilder::kLocal ? "local" : "cheapest"},
        {"game", s.regional_game ? (*s.regional_game == RegionalGame::kCournot ? "cournot"
                                                                                : "bertrand")
                                 : "both"}};
  }
  return j;
}

Json cournot_json(const NashCournotSolution& nc) {
  Json violations = Json::array();
  for (Viability v : nc.violations) violations.push_back(to_string(v));
  return {{"t", nc.t},         {"q1", nc.q1},           {"q2", nc.q2},
          {"price", nc.price}, {"profit1", nc.profit1}, {"profit2", nc.profit2},
          {"viable", nc.viable}, {"violations", violations}};
}

Json sharing_json(const SharingOutcome& s) {
  return {{"price", s.price},
          {"quantity", s.quantity},
          {"combined_profit", s.combined_profit},
          {"split", {s.split[0], s.split[1]}},
          {"shapley", shapley_name(s.mode.shapley)},
          {"participating", s.participating},
          {"negative_share", s.negative_share}};
}

Json bertrand_json(const BertrandOutcome& b) {
  Json ranges = Json::array();
  for (const PriceRange& r : b.ranges) {
    ranges.push_back({{"lo", r.lo}, {"hi", r.hi}, {"empty", r.empty}});
  }
  return {{"regime", to_string(b.regime)},
          {"prices", {b.prices[0], b.prices[1]}},
          {"quantities", {b.quantities[0], b.quantities[1]}},
          {"profits", {b.profits[0], b.profits[1]}},
          {"participating", {b.participating[0], b.participating[1]}},
          {"zero_profit_ranges", ranges},
          {"warnings", b.warnings}};
}

Json regional_json(const RegionalOutcome& o) {
  Json classes = Json::array();
  for (const ClassOutcome& c : o.classes) {
    classes.push_back({{"class", to_string(c.user_class)},
                       {"mass", c.mass},
                       {"price", {c.price[0], c.price[1]}},
                       {"quantity", {c.quantity[0], c.quantity[1]}},
                       {"combined_quantity", c.combined_quantity},
                       {"unservable", c.unservable}});
  }
  Json j = {{"classes", classes},
            {"profits", {o.profits[0], o.profits[1]}},
            {"participating", {o.participating[0], o.participating[1]}}};
  if (o.combined_price) j["combined_price"] = *o.combined_price;
  if (o.combined_quantity) j["combined_quantity"] = *o.combined_quantity;
  if (o.combined_profit) j["combined_profit"] = *o.combined_profit;
  if (o.split) j["split"] = {(*o.split)[0], (*o.split)[1]};
  if (o.contested_cournot) j["contested_cournot"] = cournot_json(*o.contested_cournot);
  if (o.contested_bertrand) j["contested_bertrand"] = bertrand_json(*o.contested_bertrand);
  j["warnings"] = o.warnings;
  return j;
}

Json payoff_json(const PayoffTable& t) {
  Json cells = Json::array();
  for (Strategy s1 : kStrategies) {
    for (Strategy s2 : kStrategies) {
      const PayoffCell& c = t.at(s1, s2);
      Json cell = {{"sp1", to_string(s1)},
                   {"sp2", to_string(s2)},
                   {"available", c.available},
                   {"non_viable_outcome", c.non_viable_outcome},
                   {"q1", c.q1},
                   {"q2", c.q2},
                   {"profit1", c.profit1},
                   {"profit2", c.profit2}};
      if (!c.note.empty()) cell["note"] = c.note;
      cells.push_back(cell);
    }
  }
  Json j = {{"rows", "sp1"}, {"columns", "sp2"}, {"cells", cells}};
  if (t.sharing_unregulated) {
    j["sharing_unregulated"] = {{"profit1", t.sharing_unregulated->profit1},
                                {"profit2", t.sharing_unregulated->profit2}};
  }
  if (t.sharing_regulated) {
    j["sharing_regulated"] = {{"profit1", t.sharing_regulated->profit1},
                              {"profit2", t.sharing_regulated->profit2}};
  }
  return j;
}

// --- human tables ----------------------------------------------------------

std::string fx(double v) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.2f}", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string pair_text(double a, double b) { return fmt::format("({}, {})", fx(a), fx(b)); }

void bertrand_human(std::string& out, const std::string& title, const BertrandOutcome& b) {
  out += fmt::format("{}: regime {}\n", title, to_string(b.regime));
  out += fmt::format("  {:<4} {:>10} {:>10} {:>10} {:>10}\n", "SP", "price", "quantity", "profit",
                     "p_lo");
  for (std::size_t i = 0; i < 2; ++i) {
    out += fmt::format("  {:<4} {:>10} {:>10} {:>10} {:>10}\n", i + 1, fx(b.prices[i]),
                       fx(b.quantities[i]), fx(b.profits[i]),
                       b.ranges[i].empty ? "-" : fx(b.ranges[i].lo));
  }
}

void regional_human(std::string& out, const std::string& title, const RegionalOutcome& o) {
  out += fmt::format("{}: profits {}\n", title, pair_text(o.profits[0], o.profits[1]));
  if (o.combined_price) {
    out += fmt::format("  combined price {}, quantity {}, profit {}\n", fx(*o.combined_price),
                       fx(o.combined_quantity.value_or(0.0)), fx(o.combined_profit.value_or(0.0)));
  }
  if (o.combined_quantity) {
    out += fmt::format("  {:<6} {:>6} {:>8} {:>8}\n", "class", "mass", "price", "q");
    for (const ClassOutcome& c : o.classes) {
      out += fmt::format("  {:<6} {:>6} {:>8} {:>8}\n", to_string(c.user_class), fx(c.mass),
                         fx(c.price[0]), fx(c.combined_quantity));
    }
    return;
  }
  out += fmt::format("  {:<6} {:>6} {:>8} {:>8} {:>8} {:>8}\n", "class", "mass", "p1", "p2", "q1",
                     "q2");
  for (const ClassOutcome& c : o.classes) {
    out += fmt::format("  {:<6} {:>6} {:>8} {:>8} {:>8} {:>8}{}\n", to_string(c.user_class),
                       fx(c.mass), fx(c.price[0]), fx(c.price[1]), fx(c.quantity[0]),
                       fx(c.quantity[1]), c.unservable ? "  unservable" : "");
  }
}

// --- scalar columns --------------------------------------------------------

struct Cells {
  std::vector<std::string> names;
  std::vector<std::string> values;
  bool fill = false;

  void add(const std::string& name, const std::string& value) {
    names.push_back(name);
    values.push_back(fill ? value : "");
  }
  void num(const std::string& name, double v) { add(name, fill ? format_number(v) : ""); }
  void flag(const std::string& name, bool v) { add(name, v ? "1" : "0"); }
};

std::string strategy_key(Strategy s) {
  switch (s) {
    case Strategy::kNashCournot: return "nc";
    case Strategy::kAggression: return "agg";
    case Strategy::kSubmission: return "sub";
  }
  return "?";
}

void bertrand_cells(Cells& c, const std::string& p, const std::optional<BertrandOutcome>& b) {
  c.fill = b.has_value();
  const BertrandOutcome v = b.value_or(BertrandOutcome{});
  c.add(p + "_regime", to_string(v.regime));
  for (int i = 0; i < 2; ++i) c.num(fmt::format("{}_price{}", p, i + 1), v.prices[i]);
  for (int i = 0; i < 2; ++i) c.num(fmt::format("{}_quantity{}", p, i + 1), v.quantities[i]);
  for (int i = 0; i < 2; ++i) c.num(fmt::format("{}_profit{}", p, i + 1), v.profits[i]);
}

void sharing_cells(Cells& c, const std::string& p, const std::optional<SharingOutcome>& s) {
  c.fill = s.has_value();
  const SharingOutcome v = s.value_or(SharingOutcome{});
  c.num(p + "_price", v.price);
  c.num(p + "_quantity", v.quantity);
  c.num(p + "_profit", v.combined_profit);
  c.num(p + "_split1", v.split[0]);
  c.num(p + "_split2", v.split[1]);
}

void regional_cells(Cells& c, const std::string& p, const std::optional<RegionalOutcome>& o) {
  c.fill = o.has_value();
  const RegionalOutcome v = o.value_or(RegionalOutcome{});
  c.num(p + "_profit1", v.profits[0]);
  c.num(p + "_profit2", v.profits[1]);
}

Cells collect(const ResultDocument& doc, bool fill) {
  Cells c;
  for (Analysis a : doc.scenario.analyses) {
    switch (a) {
      case Analysis::kMonopoly: {
        c.fill = fill && doc.monopoly.has_value();
        const auto m = doc.monopoly.value_or(std::array<Outcome, 2>{});
        for (int i = 0; i < 2; ++i) {
          c.num(fmt::format("mon{}_price", i + 1), m[i].price);
          c.num(fmt::format("mon{}_quantity", i + 1), m[i].quantity);
          c.num(fmt::format("mon{}_profit", i + 1), m[i].profit);
        }
        break;
      }
      case Analysis::kCournot: {
        c.fill = fill && doc.cournot.has_value();
        const NashCournotSolution nc = doc.cournot.value_or(NashCournotSolution{});
        c.num("nc_t", nc.t);
        c.num("nc_q1", nc.q1);
        c.num("nc_q2", nc.q2);
        c.num("nc_price", nc.price);
        c.num("nc_profit1", nc.profit1);
        c.num("nc_profit2", nc.profit2);
        c.flag("nc_viable", nc.viable);
        break;
      }
      case Analysis::kAggression:
        for (int i = 0; i < 2; ++i) {
          const auto* r = doc.aggression ? &(*doc.aggression)[i].result : nullptr;
          c.fill = fill && r && r->has_value();
          c.num(fmt::format("agg{}_quantity", i + 1), c.fill ? (*r)->quantity : 0.0);
        }
        break;
      case Analysis::kPayoffTable: {
        c.fill = fill && doc.payoff_table.has_value();
        const PayoffTable t = doc.payoff_table.value_or(PayoffTable{});
        for (Strategy s1 : kStrategies) {
          for (Strategy s2 : kStrategies) {
            const PayoffCell& cell = t.at(s1, s2);
            const std::string key = strategy_key(s1) + "_" + strategy_key(s2);
            const bool keep = c.fill;
            c.fill = keep && cell.available;
            c.num("pt_" + key + "_profit1", cell.profit1);
            c.num("pt_" + key + "_profit2", cell.profit2);
            c.fill = keep;
          }
        }
        break;
      }
      case Analysis::kSharing:
        sharing_cells(c, "share", fill ? doc.sharing : std::nullopt);
        break;
      case Analysis::kRegulated:
        sharing_cells(c, "reg", fill ? doc.regulated : std::nullopt);
        break;
      case Analysis::kBertrand:
        bertrand_cells(c, "bert", fill ? doc.bertrand : std::nullopt);
        break;
      case Analysis::kInformed:
        bertrand_cells(c, "inf", fill ? doc.informed : std::nullopt);
        break;
      case Analysis::kSharedCost:
        bertrand_cells(c, "sc", fill ? doc.shared_cost : std::nullopt);
        break;
      case Analysis::kRegions: {
        const RegionsResult r = doc.regions.value_or(RegionsResult{});
        const bool have = fill && doc.regions.has_value();
        c.fill = have;
        c.num("rg_mon_profit1", r.standalone_monopolies[0].profit);
        c.num("rg_mon_profit2", r.standalone_monopolies[1].profit);
        c.fill = have && r.cooperation.has_value();
        const RegionalOutcome coop = r.cooperation.value_or(RegionalOutcome{});
        c.num("rg_coop_price", coop.combined_price.value_or(0.0));
        c.num("rg_coop_profit", coop.combined_profit.value_or(0.0));
        c.num("rg_coop_split1", coop.profits[0]);
        c.num("rg_coop_split2", coop.profits[1]);
        regional_cells(c, "rg_cournot", have ? r.cournot : std::nullopt);
        regional_cells(c, "rg_bertrand", have ? r.bertrand : std::nullopt);
        break;
      }
    }
  }
  return c;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

nlohmann::ordered_json to_json(const ResultDocument& doc) {
  Json j;
  j["scenario"] = scenario_json(doc.scenario);
  if (doc.monopoly) {
    Json m = Json::array();
    for (const Outcome& o : *doc.monopoly) m.push_back(outcome_json(o));
    j["monopoly"] = m;
  }
  if (doc.cournot) {
    j["cournot"] = cournot_json(*doc.cournot);
    if (doc.cournot_diagnostics) {
      const auto& r = doc.cournot_diagnostics->best_response_residual;
      j["cournot"]["diagnostics"] = {{"best_response_residual", {r[0], r[1]}}};
    }
  }
  if (doc.aggression) {
    Json a = Json::array();
    for (const AggressionEntry& e : *doc.aggression) {
      if (e.result) {
        a.push_back({{"quantity", e.result->quantity},
                     {"threshold", e.result->threshold ? Json(*e.result->threshold) : Json()},
                     {"monopoly_branch", e.result->monopoly_branch},
                     {"victim_profit_at", e.result->victim_profit_at}});
      } else {
        a.push_back({{"error", e.error}});
      }
    }
    j["aggression"] = a;
  }
  if (doc.payoff_table) j["payoff_table"] = payoff_json(*doc.payoff_table);
  if (doc.sharing) j["sharing"] = sharing_json(*doc.sharing);
  if (doc.regulated) j["regulated"] = sharing_json(*doc.regulated);
  if (doc.bertrand) j["bertrand"] = bertrand_json(*doc.bertrand);
  if (doc.informed) {
    j["informed"] = bertrand_json(*doc.informed);
    j["informed"]["informed_fraction"] = doc.scenario.informed.value_or(1.0);
  }
  if (doc.shared_cost) {
    j["shared_cost"] = bertrand_json(*doc.shared_cost);
    j["shared_cost"]["informed_fraction"] = doc.scenario.informed.value_or(1.0);
  }
  if (doc.regions) {
    const RegionsResult& r = *doc.regions;
    Json rj;
    rj["overlapping"] = r.overlapping;
    rj["standalone_monopolies"] = {outcome_json(r.standalone_monopolies[0]),
                                   outcome_json(r.standalone_monopolies[1])};
    if (r.standalone) rj["standalone"] = regional_json(*r.standalone);
    if (r.cooperation) rj["cooperation"] = regional_json(*r.cooperation);
    if (r.cournot) rj["cournot"] = regional_json(*r.cournot);
    if (r.bertrand) rj["bertrand"] = regional_json(*r.bertrand);
    j["regions"] = rj;
  }
  j["warnings"] = doc.warnings;
  Json failures = Json::array();
  for (const AnalysisFailure& f : doc.failures) {
    failures.push_back({{"analysis", f.analysis}, {"code", f.code}, {"message", f.message}});
  }
  j["failures"] = failures;
  j["status"] = doc.ok() ? "ok" : "partial";
  return j;
}

std::string render_json(const ResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string render_human(const ResultDocument& doc) {
  const Duopoly& d = doc.scenario.duopoly;
  std::string out;
  out += fmt::format("Market: Q = {}, epsilon = {}\n", d.market.demand_scale, d.market.elasticity);
  out += fmt::format("SP1: alpha = {}, beta = {}    SP2: alpha = {}, beta = {}\n\n", d.sp1.fixed,
                     d.sp1.unit, d.sp2.fixed, d.sp2.unit);
  if (doc.monopoly) {
    out += "Monopoly\n";
    out += fmt::format("  {:<4} {:>10} {:>10} {:>10}\n", "SP", "price", "quantity", "profit");
    for (std::size_t i = 0; i < 2; ++i) {
      const Outcome& o = (*doc.monopoly)[i];
      out += fmt::format("  {:<4} {:>10} {:>10} {:>10}{}\n", i + 1, fx(o.price), fx(o.quantity),
                         fx(o.profit), o.participating ? "" : "  stays out");
    }
    out += "\n";
  }
  if (doc.cournot) {
    const NashCournotSolution& nc = *doc.cournot;
    out += fmt::format("Nash-Cournot{}\n", nc.viable ? "" : " (not viable)");
    out += fmt::format("  q = {}, price = {}, profits = {}, t = {:.6f}\n\n",
                       pair_text(nc.q1, nc.q2), fx(nc.price), pair_text(nc.profit1, nc.profit2),
                       nc.t);
  }
  if (doc.aggression) {
    out += "Aggression\n";
    for (std::size_t i = 0; i < 2; ++i) {
      const AggressionEntry& e = (*doc.aggression)[i];
      if (e.result) {
        out += fmt::format("  SP{} drive-out quantity {}{}\n", i + 1, fx(e.result->quantity),
                           e.result->monopoly_branch ? " (monopoly output suffices)" : "");
      } else {
        out += fmt::format("  SP{} unavailable: {}\n", i + 1, e.error);
      }
    }
    out += "\n";
  }
  if (doc.payoff_table) {
    const PayoffTable& t = *doc.payoff_table;
    out += "Payoff table (rows SP1, columns SP2; entries (profit1, profit2))\n";
    out += fmt::format("  {:<14}", "");
    for (Strategy s : kStrategies) out += fmt::format(" {:>18}", to_string(s));
    out += "\n";
    for (Strategy s1 : kStrategies) {
      out += fmt::format("  {:<14}", to_string(s1));
      for (Strategy s2 : kStrategies) {
        const PayoffCell& c = t.at(s1, s2);
        std::string cell = c.available ? pair_text(c.profit1, c.profit2) : "n/a";
        if (c.non_viable_outcome) cell += "*";
        out += fmt::format(" {:>18}", cell);
      }
      out += "\n";
    }
    if (t.sharing_unregulated) {
      out += fmt::format("  sharing (no regulator)  {}\n",
                         pair_text(t.sharing_unregulated->profit1, t.sharing_unregulated->profit2));
    }
    if (t.sharing_regulated) {
      out += fmt::format("  sharing (regulator)     {}\n",
                         pair_text(t.sharing_regulated->profit1, t.sharing_regulated->profit2));
    }
    out += "  * not a viable outcome: the submissive SP would rather play Nash-Cournot\n\n";
  }
  for (const auto& [title, s] : {std::pair{"Sharing (no regulator)", &doc.sharing},
                                 std::pair{"Sharing (regulator)", &doc.regulated}}) {
    if (!*s) continue;
    const SharingOutcome& o = **s;
    out += fmt::format("{} [{} basis]\n", title, shapley_name(o.mode.shapley));
    out += fmt::format("  price {}, quantity {}, combined profit {}, split {}\n\n", fx(o.price),
                       fx(o.quantity), fx(o.combined_profit), pair_text(o.split[0], o.split[1]));
  }
  if (doc.bertrand) {
    bertrand_human(out, "Bertrand", *doc.bertrand);
    out += "\n";
  }
  if (doc.informed) {
    bertrand_human(out,
                   fmt::format("Bertrand, informed fraction {}", doc.scenario.informed.value_or(1.0)),
                   *doc.informed);
    out += "\n";
  }
  if (doc.shared_cost) {
    bertrand_human(
        out, fmt::format("Shared cost, informed fraction {}", doc.scenario.informed.value_or(1.0)),
        *doc.shared_cost);
    out += "\n";
  }
  if (doc.regions) {
    const RegionsResult& r = *doc.regions;
    out += fmt::format("Regions: standalone monopoly values {}\n",
                       pair_text(r.standalone_monopolies[0].profit,
                                 r.standalone_monopolies[1].profit));
    if (r.standalone) regional_human(out, "  standalone", *r.standalone);
    if (r.cooperation) regional_human(out, "  cooperation", *r.cooperation);
    if (r.cournot) regional_human(out, "  competition (Cournot)", *r.cournot);
    if (r.bertrand) regional_human(out, "  competition (Bertrand)", *r.bertrand);
    out += "\n";
  }
  for (const std::string& w : doc.warnings) out += fmt::format("warning: {}\n", w);
  for (const AnalysisFailure& f : doc.failures) {
    out += fmt::format("FAILED {}: {}\n", f.analysis, f.message);
  }
  return out;
}

std::vector<std::string> scalar_columns(const ScenarioSpec& spec) {
  ResultDocument empty;
  empty.scenario = spec;
  return collect(empty, false).names;
}

std::vector<std::string> scalar_values(const ResultDocument& doc) {
  return collect(doc, true).values;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render_csv(const SweepTable& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string render_csv(const Curve& curve) {
  std::string out;
  out += fmt::format("# curve,{}\n", to_string(curve.kind));
  for (const std::string& a : curve.annotations) out += fmt::format("# {}\n", a);
  for (std::size_t i = 0; i < curve.columns.size(); ++i) {
    if (i) out += ',';
    out += curve.columns[i];
  }
  out += '\n';
  for (const auto& row : curve.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace infrashare
