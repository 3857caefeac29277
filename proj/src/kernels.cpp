#include "infrashare/kernels.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "infrashare/analysis.hpp"
#include "infrashare/errors.hpp"
#include "infrashare/result_io.hpp"

namespace infrashare {
namespace {

// Runs body(i) for i in [0, n). Workers share nothing; each writes its own slot.
void for_each_index(std::int64_t n, Execution exec, const std::function<void(std::int64_t)>& body) {
  if (exec == Execution::kSerial) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

std::vector<std::string> sweep_row(const ScenarioSpec& spec, std::size_t i,
                                   std::size_t n_values) {
  std::vector<std::string> row;
  ScenarioSpec point;
  try {
    point = sweep_point(spec, i);
  } catch (const std::exception& e) {
    row.assign(spec.sweep.size() + n_values, "");
    row.push_back(e.what());
    return row;
  }
  for (const SweepAxis& a : spec.sweep) row.push_back(format_number(get_param(point, a.param)));
  try {
    const ResultDocument doc = run_analyses(point);
    const std::vector<std::string> values = scalar_values(doc);
    row.insert(row.end(), values.begin(), values.end());
    std::string error;
    for (const AnalysisFailure& f : doc.failures) {
      if (!error.empty()) error += "; ";
      error += fmt::format("{}: {}", f.analysis, f.message);
    }
    row.push_back(error);
  } catch (const std::exception& e) {
    row.insert(row.end(), n_values, "");
    row.push_back(e.what());
  }
  return row;
}

double quantity_range(const Duopoly& d) {
  double hi = 0.0;
  for (Sp sp : {Sp::kOne, Sp::kTwo}) {
    try {
      hi = std::max(hi, monopoly_solution(d.cost(sp), d.market).quantity);
    } catch (const Error&) {
    }
  }
  try {
    const NashCournotSolution nc = nash_cournot(d);
    hi = std::max({hi, nc.q1, nc.q2});
  } catch (const Error&) {
  }
  return hi > 0.0 ? 2.0 * hi : 1.0;
}

double grid(double lo, double hi, int samples, std::int64_t i) {
  if (i == samples - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
}

void annotate_nash(Curve& c, const Duopoly& d) {
  try {
    const NashCournotSolution nc = nash_cournot(d);
    if (nc.viable) {
      c.annotations.push_back(fmt::format("ne,q1={},q2={},price={}", format_number(nc.q1),
                                          format_number(nc.q2), format_number(nc.price)));
    }
  } catch (const Error&) {
  }
}

void annotate_drive_out(Curve& c, const Duopoly& d, Sp aggressor, const SolverConfig& cfg) {
  try {
    AggressionOptions opts;
    opts.solver = cfg;
    const AggressionResult a = aggression_quantity(aggressor, d, opts);
    if (a.threshold) {
      c.annotations.push_back(fmt::format("drive_out,q{}={}", idx(aggressor) + 1,
                                          format_number(*a.threshold)));
    }
  } catch (const Error&) {
  }
}

}  // namespace

SweepTable run_sweep(const ScenarioSpec& spec, Execution exec) {
  const std::size_t n = sweep_size(spec);
  if (n > spec.sweep_cap) {
    throw Error(ErrorCode::kSweepSize,
                fmt::format("sweep grid exceeds the cap of {} points", spec.sweep_cap));
  }
  SweepTable table;
  for (const SweepAxis& a : spec.sweep) table.columns.push_back(a.param);
  const std::vector<std::string> scalars = scalar_columns(spec);
  table.columns.insert(table.columns.end(), scalars.begin(), scalars.end());
  table.columns.push_back("error");

  table.rows.resize(n);
  for_each_index(static_cast<std::int64_t>(n), exec, [&](std::int64_t i) {
    table.rows[static_cast<std::size_t>(i)] =
        sweep_row(spec, static_cast<std::size_t>(i), scalars.size());
  });
  return table;
}

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::kBestResponse: return "best-response";
    case CurveKind::kProfitVsQ1: return "profit-vs-q1";
    case CurveKind::kProfitVsQ2: return "profit-vs-q2";
    case CurveKind::kProfitVsPrice: return "profit-vs-price";
  }
  return "unknown";
}

CurveKind parse_curve_kind(std::string_view name) {
  for (CurveKind k : {CurveKind::kBestResponse, CurveKind::kProfitVsQ1, CurveKind::kProfitVsQ2,
                      CurveKind::kProfitVsPrice}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidParameter, fmt::format("unknown curve kind '{}'", name));
}

Curve sample_curve(const ScenarioSpec& spec, CurveKind kind, int samples, Execution exec) {
  if (samples < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("samples must be at least 2 (got {})", samples));
  }
  validate(spec);
  const Duopoly& d = spec.duopoly;
  const SolverConfig& cfg = spec.solver;
  Curve c;
  c.kind = kind;
  c.rows.resize(static_cast<std::size_t>(samples));
  std::function<std::vector<double>(double)> point;
  double lo = 0.0;
  double hi = quantity_range(d);

  switch (kind) {
    case CurveKind::kBestResponse:
      c.columns = {"x", "br1", "br2"};
      point = [&](double x) {
        return std::vector<double>{x, best_response(x, d.sp1, d.market, cfg),
                                   best_response(x, d.sp2, d.market, cfg)};
      };
      annotate_nash(c, d);
      break;
    case CurveKind::kProfitVsQ1:
      c.columns = {"q1", "q2", "profit1", "profit2"};
      point = [&](double q1) {
        const double q2 = best_response(q1, d.sp2, d.market, cfg);
        return std::vector<double>{q1, q2, profit(q1, q2, d.sp1, d.market),
                                   profit(q2, q1, d.sp2, d.market)};
      };
      annotate_nash(c, d);
      annotate_drive_out(c, d, Sp::kOne, cfg);
      break;
    case CurveKind::kProfitVsQ2:
      c.columns = {"q2", "q1", "profit1", "profit2"};
      point = [&](double q2) {
        const double q1 = best_response(q2, d.sp1, d.market, cfg);
        return std::vector<double>{q2, q1, profit(q1, q2, d.sp1, d.market),
                                   profit(q2, q1, d.sp2, d.market)};
      };
      annotate_nash(c, d);
      annotate_drive_out(c, d, Sp::kTwo, cfg);
      break;
    case CurveKind::kProfitVsPrice: {
      c.columns = {"price", "profit1", "profit2"};
      lo = std::min(d.sp1.unit, d.sp2.unit);
      hi = 2.0 * std::max(monopoly_price(d.sp1, d.market), monopoly_price(d.sp2, d.market));
      if (!(hi > lo)) hi = lo + 1.0;
      point = [&](double p) {
        return std::vector<double>{p, profit_at_price(p, d.sp1, d.market),
                                   profit_at_price(p, d.sp2, d.market)};
      };
      try {
        const BertrandOutcome b = bertrand_basic(d, spec.undercut, cfg);
        for (std::size_t i = 0; i < 2; ++i) {
          if (!b.ranges[i].empty) {
            c.annotations.push_back(fmt::format("zero_profit,sp{},lo={},hi={}", i + 1,
                                                format_number(b.ranges[i].lo),
                                                format_number(b.ranges[i].hi)));
          }
        }
        if (b.regime == BertrandRegime::kDriveOut) {
          const std::size_t w = b.participating[0] ? 0 : 1;
          c.annotations.push_back(
              fmt::format("drive_out,sp{},price={}", w + 1, format_number(b.prices[w])));
        }
      } catch (const Error&) {
      }
      break;
    }
  }

  for_each_index(samples, exec, [&](std::int64_t i) {
    const double x = grid(lo, hi, samples, i);
    std::vector<double> row;
    try {
      row = point(x);
    } catch (const std::exception&) {
      row.assign(c.columns.size(), std::numeric_limits<double>::quiet_NaN());
      row[0] = x;
    }
    c.rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  return c;
}

}  // namespace infrashare
