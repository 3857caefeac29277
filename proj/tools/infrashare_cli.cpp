#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "infrashare/analysis.hpp"
#include "infrashare/errors.hpp"
#include "infrashare/kernels.hpp"
#include "infrashare/result_io.hpp"
#include "infrashare/scenario_config.hpp"

namespace {

using namespace infrashare;

constexpr int kExitPartial = 1;
constexpr int kExitError = 2;

struct ScenarioOptions {
  std::string preset;
  std::string config;
  std::string analysis;
  std::optional<double> informed;
  std::optional<double> undercut;
  std::string shapley;
  std::string format = "machine";
  std::string out;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& o, bool with_analysis) {
  auto* preset = cmd->add_option("--preset", o.preset, "Built-in scenario (see `presets`)");
  auto* config = cmd->add_option("--config", o.config, "Scenario file");
  preset->excludes(config);
  config->excludes(preset);
  if (with_analysis) {
    cmd->add_option("--analysis", o.analysis,
                    "Comma-separated analyses: monopoly, cournot, aggression, payoff-table, "
                    "sharing, regulated, bertrand, informed, shared-cost, regions, all");
  }
  cmd->add_option("--informed", o.informed, "Informed user fraction I in [0, 1]");
  cmd->add_option("--undercut", o.undercut, "Bertrand price step (default 0.01)");
  cmd->add_option("--shapley", o.shapley, "Shapley singleton basis")
      ->check(CLI::IsMember({"mon", "nc"}));
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"machine", "human"}));
  cmd->add_option("--out", o.out, "Output file (default: standard output)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigSyntax, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioSpec load(const ScenarioOptions& o) {
  ScenarioSpec spec =
      parse_scenario(o.config.empty() ? preset_text(o.preset.empty() ? "paper" : o.preset)
                                      : read_file(o.config));
  if (!o.analysis.empty()) {
    spec.analyses = parse_analysis_list(o.analysis, spec.regions.has_value());
  }
  if (o.informed) spec.informed = *o.informed;
  if (o.undercut) spec.undercut = *o.undercut;
  if (o.shapley == "mon") spec.shapley = ShapleyBasis::kWithoutExternalities;
  if (o.shapley == "nc") spec.shapley = ShapleyBasis::kWithExternalities;
  validate(spec);
  return spec;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kDomain, "cannot write '" + path + "'");
  out << text;
}

void require_machine(const ScenarioOptions& o, const char* cmd) {
  if (o.format != "machine") {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(cmd) + " writes CSV only; use --format machine");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-provider infrastructure sharing and competition models"};
  app.require_subcommand(1);

  ScenarioOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "Run analyses on one scenario");
  add_scenario_options(solve, solve_opts, true);

  ScenarioOptions curve_opts;
  std::string curve_kind;
  int samples = 201;
  auto* curves = app.add_subcommand("curves", "Sample best-response or profit curves as CSV");
  curves->add_option("kind", curve_kind, "best-response, profit-vs-q1, profit-vs-q2, profit-vs-price")
      ->required()
      ->check(CLI::IsMember({"best-response", "profit-vs-q1", "profit-vs-q2", "profit-vs-price"}));
  curves->add_option("--samples", samples, "Number of sample points (>= 2)");
  add_scenario_options(curves, curve_opts, false);

  ScenarioOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Evaluate analyses over the scenario's sweep grid");
  add_scenario_options(sweep, sweep_opts, true);

  std::string show;
  auto* presets = app.add_subcommand("presets", "List built-in scenarios, or print one");
  presets->add_option("name", show, "Preset to print as a scenario file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const ScenarioSpec spec = load(solve_opts);
      const ResultDocument doc = run_analyses(spec);
      emit(solve_opts.format == "human" ? render_human(doc) : render_json(doc), solve_opts.out);
      for (const AnalysisFailure& f : doc.failures) {
        std::cerr << "error: " << f.analysis << ": " << f.message << "\n";
      }
      return doc.ok() ? 0 : kExitPartial;
    }
    if (*curves) {
      require_machine(curve_opts, "curves");
      const ScenarioSpec spec = load(curve_opts);
      emit(render_csv(sample_curve(spec, parse_curve_kind(curve_kind), samples)), curve_opts.out);
      return 0;
    }
    if (*sweep) {
      require_machine(sweep_opts, "sweep");
      const ScenarioSpec spec = load(sweep_opts);
      const SweepTable table = run_sweep(spec);
      emit(render_csv(table), sweep_opts.out);
      const std::size_t error_col = table.columns.size() - 1;
      std::size_t failed = 0;
      for (const auto& row : table.rows) failed += row[error_col].empty() ? 0 : 1;
      if (failed) std::cerr << "warning: " << failed << " of " << table.rows.size() << " points failed\n";
      return 0;
    }
    if (*presets) {
      if (!show.empty()) {
        std::cout << preset_text(show);
        return 0;
      }
      for (const std::string& name : preset_names()) {
        std::cout << name << "\t" << preset_description(name) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
