#include "infrashare/scenario_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "infrashare/errors.hpp"

namespace infrashare {
namespace {

constexpr std::array<std::pair<Analysis, std::string_view>, 10> kAnalysisNames = {{
    {Analysis::kMonopoly, "monopoly"},
    {Analysis::kCournot, "cournot"},
    {Analysis::kAggression, "aggression"},
    {Analysis::kPayoffTable, "payoff-table"},
    {Analysis::kSharing, "sharing"},
    {Analysis::kRegulated, "regulated"},
    {Analysis::kBertrand, "bertrand"},
    {Analysis::kInformed, "informed"},
    {Analysis::kSharedCost, "shared-cost"},
    {Analysis::kRegions, "regions"},
}};

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  throw Error(ErrorCode::kConfigSyntax, fmt::format("line {}: {}", line, msg));
}

[[noreturn]] void invalid(std::string_view field, const std::string& msg) {
  throw Error(ErrorCode::kConfigValidation, fmt::format("{}: {}", field, msg));
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string footprint_text(const Footprint& f) {
  return std::string(f.west ? "W" : "") + (f.east ? "E" : "");
}

struct Entry {
  std::string value;
  int line = 0;
};

// One parsed section: key -> (value, line).
struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
};

class Reader {
 public:
  Reader(const Section& s, std::initializer_list<std::string_view> allowed) : s_(s) {
    for (const auto& [key, e] : s.entries) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        syntax_error(e.line, fmt::format("unknown key '{}' in [{}]", key, s.name));
      }
    }
  }

  std::string field(std::string_view key) const { return fmt::format("{}.{}", s_.name, key); }

  bool has(const std::string& key) const { return s_.entries.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    const auto it = s_.entries.find(key);
    if (it == s_.entries.end()) invalid(field(key), "required field is missing");
    return it->second.value;
  }

  double number(const std::string& key) const {
    const auto v = to_double(text(key));
    if (!v) {
      syntax_error(s_.entries.at(key).line,
                   fmt::format("{} expects a finite decimal number, got '{}'", field(key),
                               text(key)));
    }
    return *v;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) const {
    const auto v = to_integer(text(key));
    if (!v) {
      syntax_error(s_.entries.at(key).line,
                   fmt::format("{} expects an integer, got '{}'", field(key), text(key)));
    }
    return *v;
  }

 private:
  const Section& s_;
};

Footprint parse_footprint(std::string_view field, std::string_view v) {
  if (v == "W") return {true, false};
  if (v == "E") return {false, true};
  if (v == "WE" || v == "EW") return {true, true};
  invalid(field, fmt::format("expected W, E or WE, got '{}'", v));
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') syntax_error(line_no, "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      const bool sweep = name.rfind("sweep.", 0) == 0;
      if (sweep) {
        const auto n = to_integer(std::string_view(name).substr(6));
        if (!n || *n < 1) syntax_error(line_no, fmt::format("bad sweep section '[{}]'", name));
      } else if (name != "market" && name != "sp1" && name != "sp2" && name != "analysis" &&
                 name != "regions") {
        syntax_error(line_no, fmt::format("unknown section '[{}]'", name));
      }
      if (!seen.insert(name).second) {
        syntax_error(line_no, fmt::format("duplicate section '[{}]'", name));
      }
      sections.push_back({name, line_no, {}});
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) syntax_error(line_no, "expected 'key = value'");
      if (sections.empty()) syntax_error(line_no, "key outside any section");
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) syntax_error(line_no, "empty key");
      if (value.empty()) syntax_error(line_no, fmt::format("empty value for '{}'", key));
      auto& entries = sections.back().entries;
      if (entries.count(key)) syntax_error(line_no, fmt::format("duplicate key '{}'", key));
      entries[key] = {value, line_no};
    }
    if (end == text.size()) break;
  }
  return sections;
}

double* param_slot(ScenarioSpec& spec, std::string_view param) {
  Duopoly& d = spec.duopoly;
  if (param == "market.Q") return &d.market.demand_scale;
  if (param == "market.epsilon") return &d.market.elasticity;
  if (param == "sp1.alpha") return &d.sp1.fixed;
  if (param == "sp1.beta") return &d.sp1.unit;
  if (param == "sp2.alpha") return &d.sp2.fixed;
  if (param == "sp2.beta") return &d.sp2.unit;
  if (param == "analysis.undercut") return &spec.undercut;
  if (param == "analysis.informed") {
    if (!spec.informed) spec.informed = 1.0;
    return &*spec.informed;
  }
  if (param.rfind("regions.", 0) == 0) {
    if (!spec.regions) return nullptr;
    if (param == "regions.users_w") return &spec.regions->users.west;
    if (param == "regions.users_e") return &spec.regions->users.east;
    if (param == "regions.users_we") return &spec.regions->users.both;
  }
  return nullptr;
}

}  // namespace

std::string to_string(Analysis a) {
  for (const auto& [value, name] : kAnalysisNames) {
    if (value == a) return std::string(name);
  }
  return "unknown";
}

Analysis parse_analysis(std::string_view name) {
  for (const auto& [value, n] : kAnalysisNames) {
    if (n == name) return value;
  }
  invalid("analysis.run", fmt::format("unknown analysis '{}'", name));
}

std::vector<Analysis> parse_analysis_list(std::string_view list, bool has_regions) {
  std::vector<Analysis> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t end = std::min(list.find(',', pos), list.size());
    const std::string_view item = trim(list.substr(pos, end - pos));
    if (item.empty()) invalid("analysis.run", "empty entry in analysis list");
    if (item == "all") {
      for (const auto& [value, name] : kAnalysisNames) {
        if (value == Analysis::kRegions && !has_regions) continue;
        if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(value);
      }
    } else {
      const Analysis a = parse_analysis(item);
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    pos = end + 1;
  }
  return out;
}

double SweepAxis::value(int i) const {
  if (steps <= 1) return lo;
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

ScenarioSpec parse_scenario(std::string_view text) {
  const std::vector<Section> sections = split_sections(text);
  ScenarioSpec spec;
  std::map<std::string, const Section*> by_name;
  for (const Section& s : sections) by_name[s.name] = &s;
  for (const char* required : {"market", "sp1", "sp2"}) {
    if (!by_name.count(required)) invalid(required, "required section is missing");
  }

  {
    const Reader r(*by_name["market"], {"Q", "epsilon"});
    spec.duopoly.market = {r.number("Q"), r.number("epsilon")};
  }
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    const std::string name = sp == Sp::kOne ? "sp1" : "sp2";
    const Reader r(*by_name[name], {"alpha", "beta"});
    const double alpha = r.number("alpha");
    const double beta = r.number("beta");
    (sp == Sp::kOne ? spec.duopoly.sp1 : spec.duopoly.sp2) = {alpha, beta};
  }

  if (by_name.count("regions")) {
    const Reader r(*by_name["regions"], {"sp1", "sp2", "users_w", "users_e", "users_we",
                                         "alpha_rule", "coop_builder"});
    RegionScenario rs;
    rs.footprint = {parse_footprint(r.field("sp1"), r.text("sp1")),
                    parse_footprint(r.field("sp2"), r.text("sp2"))};
    rs.users = {r.number_or("users_w", rs.users.west), r.number_or("users_e", rs.users.east),
                r.number_or("users_we", rs.users.both)};
    if (r.has("alpha_rule")) {
      const std::string& v = r.text("alpha_rule");
      if (v == "per-region") rs.alpha_rule = AlphaRule::kPerRegion;
      else if (v == "full") rs.alpha_rule = AlphaRule::kFull;
      else invalid(r.field("alpha_rule"), fmt::format("expected per-region or full, got '{}'", v));
    }
    if (r.has("coop_builder")) {
      const std::string& v = r.text("coop_builder");
      if (v == "local") rs.coop_builder = CoopBuilder::kLocal;
      else if (v == "cheapest") rs.coop_builder = CoopBuilder::kCheapest;
      else invalid(r.field("coop_builder"), fmt::format("expected local or cheapest, got '{}'", v));
    }
    spec.regions = rs;
  }

  if (by_name.count("analysis")) {
    const Reader r(*by_name["analysis"], {"run", "shapley", "informed", "undercut", "game",
                                          "solver_rel_tol", "solver_abs_tol", "solver_max_iter",
                                          "sweep_cap"});
    if (r.has("run")) spec.analyses = parse_analysis_list(r.text("run"), spec.regions.has_value());
    if (r.has("shapley")) {
      const std::string& v = r.text("shapley");
      if (v == "mon") spec.shapley = ShapleyBasis::kWithoutExternalities;
      else if (v == "nc") spec.shapley = ShapleyBasis::kWithExternalities;
      else invalid(r.field("shapley"), fmt::format("expected mon or nc, got '{}'", v));
    }
    if (r.has("informed")) spec.informed = r.number("informed");
    spec.undercut = r.number_or("undercut", spec.undercut);
    if (r.has("game")) {
      const std::string& v = r.text("game");
      if (v == "cournot") spec.regional_game = RegionalGame::kCournot;
      else if (v == "bertrand") spec.regional_game = RegionalGame::kBertrand;
      else if (v == "both") spec.regional_game.reset();
      else invalid(r.field("game"), fmt::format("expected cournot, bertrand or both, got '{}'", v));
    }
    spec.solver.rel_tol = r.number_or("solver_rel_tol", spec.solver.rel_tol);
    spec.solver.abs_tol = r.number_or("solver_abs_tol", spec.solver.abs_tol);
    if (r.has("solver_max_iter")) {
      const long long v = r.integer("solver_max_iter");
      if (v < 1 || v > 1'000'000) invalid(r.field("solver_max_iter"), "must lie in [1, 1000000]");
      spec.solver.max_iter = static_cast<int>(v);
    }
    if (r.has("sweep_cap")) {
      const long long v = r.integer("sweep_cap");
      if (v < 1) invalid(r.field("sweep_cap"), "must be at least 1");
      spec.sweep_cap = static_cast<std::size_t>(v);
    }
  }

  for (const Section& s : sections) {
    if (s.name.rfind("sweep.", 0) != 0) continue;
    const Reader r(s, {"param", "lo", "hi", "steps"});
    SweepAxis axis;
    axis.param = r.text("param");
    axis.lo = r.number("lo");
    axis.hi = r.number_or("hi", axis.lo);
    const long long steps = r.has("steps") ? r.integer("steps") : 1;
    if (steps < 1 || steps > 1'000'000'000) invalid(r.field("steps"), "must lie in [1, 1e9]");
    axis.steps = static_cast<int>(steps);
    spec.sweep.push_back(axis);
  }

  validate(spec);
  return spec;
}

void validate(const ScenarioSpec& spec) {
  const Duopoly& d = spec.duopoly;
  if (!(d.market.demand_scale > 0.0)) {
    invalid("market.Q", fmt::format("must be positive (got {})", d.market.demand_scale));
  }
  if (!(d.market.elasticity > 1.0)) {
    invalid("market.epsilon",
            fmt::format("must exceed 1 for a finite optimal price (got {})", d.market.elasticity));
  }
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    const std::string name = sp == Sp::kOne ? "sp1" : "sp2";
    const CostParams& c = d.cost(sp);
    if (!(c.fixed > 0.0)) invalid(name + ".alpha", fmt::format("must be positive (got {})", c.fixed));
    if (!(c.unit >= 0.0)) {
      invalid(name + ".beta", fmt::format("must be non-negative (got {})", c.unit));
    }
  }
  if (spec.informed && !(*spec.informed >= 0.0 && *spec.informed <= 1.0)) {
    invalid("analysis.informed", fmt::format("must lie in [0, 1] (got {})", *spec.informed));
  }
  if (!(spec.undercut > 0.0)) {
    invalid("analysis.undercut", fmt::format("must be positive (got {})", spec.undercut));
  }
  if (!(spec.solver.rel_tol > 0.0)) invalid("analysis.solver_rel_tol", "must be positive");
  if (!(spec.solver.abs_tol > 0.0)) invalid("analysis.solver_abs_tol", "must be positive");
  if (spec.solver.max_iter < 1) invalid("analysis.solver_max_iter", "must be at least 1");
  if (spec.analyses.empty()) invalid("analysis.run", "no analyses requested");
  if (spec.regions) {
    const UserFractions& u = spec.regions->users;
    const std::array<std::pair<const char*, double>, 3> fr = {
        {{"regions.users_w", u.west}, {"regions.users_e", u.east}, {"regions.users_we", u.both}}};
    for (const auto& [field, v] : fr) {
      if (!(v >= 0.0)) invalid(field, fmt::format("must be non-negative (got {})", v));
    }
    if (std::abs(u.west + u.east + u.both - 1.0) > 1e-9) {
      invalid("regions.users_w",
              fmt::format("user fractions must sum to 1 (got {})", u.west + u.east + u.both));
    }
  } else if (std::find(spec.analyses.begin(), spec.analyses.end(), Analysis::kRegions) !=
             spec.analyses.end()) {
    invalid("analysis.run", "the regions analysis needs a [regions] section");
  }
  const auto& params = sweepable_params();
  for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
    const SweepAxis& a = spec.sweep[i];
    const std::string field = fmt::format("sweep.{}.param", i + 1);
    if (std::find(params.begin(), params.end(), a.param) == params.end()) {
      invalid(field, fmt::format("'{}' is not a sweepable scalar field", a.param));
    }
    if (a.param.rfind("regions.", 0) == 0 && !spec.regions) {
      invalid(field, fmt::format("'{}' needs a [regions] section", a.param));
    }
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) {
      invalid(fmt::format("sweep.{}.lo", i + 1), "bounds must be finite");
    }
    if (a.steps < 1) invalid(fmt::format("sweep.{}.steps", i + 1), "must be at least 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.sweep[j].param == a.param) {
        invalid(field, fmt::format("'{}' is swept twice", a.param));
      }
    }
  }
}

std::string to_text(const ScenarioSpec& spec) {
  const Duopoly& d = spec.duopoly;
  std::string out;
  out += fmt::format("[market]\nQ = {}\nepsilon = {}\n\n", num(d.market.demand_scale),
                     num(d.market.elasticity));
  out += fmt::format("[sp1]\nalpha = {}\nbeta = {}\n\n", num(d.sp1.fixed), num(d.sp1.unit));
  out += fmt::format("[sp2]\nalpha = {}\nbeta = {}\n\n", num(d.sp2.fixed), num(d.sp2.unit));

  std::vector<std::string> names;
  for (Analysis a : spec.analyses) names.push_back(to_string(a));
  out += fmt::format("[analysis]\nrun = {}\n", fmt::join(names, ","));
  out += fmt::format("shapley = {}\n",
                     spec.shapley == ShapleyBasis::kWithoutExternalities ? "mon" : "nc");
  if (spec.informed) out += fmt::format("informed = {}\n", num(*spec.informed));
  out += fmt::format("undercut = {}\n", num(spec.undercut));
  if (spec.regional_game) {
    out += fmt::format("game = {}\n",
                       *spec.regional_game == RegionalGame::kCournot ? "cournot" : "bertrand");
  }
  out += fmt::format("solver_rel_tol = {}\nsolver_abs_tol = {}\nsolver_max_iter = {}\n",
                     num(spec.solver.rel_tol), num(spec.solver.abs_tol), spec.solver.max_iter);
  out += fmt::format("sweep_cap = {}\n", spec.sweep_cap);

  if (spec.regions) {
    const RegionScenario& r = *spec.regions;
    out += fmt::format("\n[regions]\nsp1 = {}\nsp2 = {}\n", footprint_text(r.footprint[0]),
                       footprint_text(r.footprint[1]));
    out += fmt::format("users_w = {}\nusers_e = {}\nusers_we = {}\n", num(r.users.west),
                       num(r.users.east), num(r.users.both));
    out += fmt::format("alpha_rule = {}\ncoop_builder = {}\n",
                       r.alpha_rule == AlphaRule::kPerRegion ? "per-region" : "full",
                       r.coop_builder == CoopBuilder::kLocal ? "local" : "cheapest");
  }
  for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
    const SweepAxis& a = spec.sweep[i];
    out += fmt::format("\n[sweep.{}]\nparam = {}\nlo = {}\nhi = {}\nsteps = {}\n", i + 1, a.param,
                       num(a.lo), num(a.hi), a.steps);
  }
  return out;
}

const std::vector<std::string>& sweepable_params() {
  static const std::vector<std::string> params = {
      "market.Q",          "market.epsilon",  "sp1.alpha",       "sp1.beta",
      "sp2.alpha",         "sp2.beta",        "analysis.informed", "analysis.undercut",
      "regions.users_w",   "regions.users_e", "regions.users_we",
  };
  return params;
}

void set_param(ScenarioSpec& spec, std::string_view param, double value) {
  double* slot = param_slot(spec, param);
  if (!slot) invalid(param, "not a settable scalar field");
  *slot = value;
}

double get_param(const ScenarioSpec& spec, std::string_view param) {
  ScenarioSpec copy = spec;
  const double* slot = param_slot(copy, param);
  if (!slot) invalid(param, "not a scalar field");
  return *slot;
}

std::size_t sweep_size(const ScenarioSpec& spec) {
  std::size_t n = 1;
  for (const SweepAxis& a : spec.sweep) {
    const auto steps = static_cast<std::size_t>(a.steps);
    if (n > spec.sweep_cap / steps + 1) return spec.sweep_cap + 1;  // overflow guard
    n *= steps;
  }
  return n;
}

ScenarioSpec sweep_point(const ScenarioSpec& spec, std::size_t i) {
  ScenarioSpec point = spec;
  point.sweep.clear();
  // Last axis varies fastest.
  for (std::size_t k = spec.sweep.size(); k-- > 0;) {
    const SweepAxis& a = spec.sweep[k];
    const auto steps = static_cast<std::size_t>(a.steps);
    set_param(point, a.param, a.value(static_cast<int>(i % steps)));
    i /= steps;
  }
  return point;
}

std::vector<ScenarioSpec> expand_sweep(const ScenarioSpec& spec) {
  const std::size_t n = sweep_size(spec);
  if (n > spec.sweep_cap) {
    throw Error(ErrorCode::kSweepSize,
                fmt::format("sweep grid exceeds the cap of {} points", spec.sweep_cap));
  }
  std::vector<ScenarioSpec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sweep_point(spec, i));
  return out;
}

namespace {

struct Preset {
  std::string_view name;
  std::string_view description;
  std::string_view text;
};

constexpr std::array<Preset, 3> kPresets = {{
    {"paper", "two-SP running example: Q=1000, eps=1.25, (alpha,beta) = (50,2.5) and (100,2)",
     R"([market]
Q = 1000
epsilon = 1.25

[sp1]
alpha = 50
beta = 2.5

[sp2]
alpha = 100
beta = 2

[analysis]
run = monopoly,cournot,aggression,sharing,regulated,payoff-table,bertrand
shapley = mon
undercut = 0.01
)"},
    {"regions-disjoint",
     "running-example costs; SP1 covers W only, SP2 covers E only, one third of users per class",
     R"([market]
Q = 1000
epsilon = 1.25

[sp1]
alpha = 50
beta = 2.5

[sp2]
alpha = 100
beta = 2

[analysis]
run = regions

[regions]
sp1 = W
sp2 = E
alpha_rule = per-region
coop_builder = local
)"},
    {"regions-overlap",
     "running-example costs; SP1 covers W only, SP2 covers both regions",
     R"([market]
Q = 1000
epsilon = 1.25

[sp1]
alpha = 50
beta = 2.5

[sp2]
alpha = 100
beta = 2

[analysis]
run = regions
undercut = 0.01

[regions]
sp1 = W
sp2 = WE
alpha_rule = per-region
coop_builder = local
)"},
}};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const Preset& p : kPresets) out.emplace_back(p.name);
  return out;
}

std::string preset_description(std::string_view name) {
  for (const Preset& p : kPresets) {
    if (p.name == name) return std::string(p.description);
  }
  invalid("preset", fmt::format("unknown preset '{}'", name));
}

std::string preset_text(std::string_view name) {
  for (const Preset& p : kPresets) {
    if (p.name == name) return std::string(p.text);
  }
  invalid("preset", fmt::format("unknown preset '{}'", name));
}

}  // namespace infrashare
