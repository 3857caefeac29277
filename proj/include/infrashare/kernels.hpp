#pragma once
// Batch kernels: parameter sweeps and curve sampling. Each has an OpenMP
// implementation and a serial one kept as the reference for tests and
// benchmarks; both produce identical output.

#include <string>
#include <string_view>
#include <vector>

#include "infrashare/scenario_config.hpp"

namespace infrashare {

enum class Execution { kSerial, kParallel };

struct SweepTable {
  std::vector<std::string> columns;              // axis params, analysis scalars, "error"
  std::vector<std::vector<std::string>> rows;    // formatted cells, grid order
};

/// One row per grid point of spec.sweep (a single row without axes). Failed
/// points carry their message in the error column. Throws Error(kSweepSize).
SweepTable run_sweep(const ScenarioSpec& spec, Execution exec = Execution::kParallel);

enum class CurveKind {
  kBestResponse,   // x = rival output; each SP's best reply
  kProfitVsQ1,     // SP1 output fixed, SP2 best-replies
  kProfitVsQ2,     // SP2 output fixed, SP1 best-replies
  kProfitVsPrice,  // each SP alone at price p
};

std::string to_string(CurveKind k);
/// Throws Error(kInvalidParameter) for an unknown name.
CurveKind parse_curve_kind(std::string_view name);

struct Curve {
  CurveKind kind = CurveKind::kBestResponse;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> annotations;  // "key,value,..." lines
};

/// Samples `samples` evenly spaced points (endpoints included) over the
/// default range of the curve kind:
///   quantity curves: [0, 2 * max(q1*, q2*, monopoly outputs)]
///   price curve:     [min(beta1, beta2), 2 * max(monopoly prices)]
/// Throws Error(kInvalidParameter) when samples < 2.
Curve sample_curve(const ScenarioSpec& spec, CurveKind kind, int samples,
                   Execution exec = Execution::kParallel);

}  // namespace infrashare
