#include "infrashare/solver.hpp"

#include <cmath>

#include <fmt/format.h>

#include "infrashare/errors.hpp"

namespace infrashare {
namespace {

bool same_sign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

constexpr double kInvPhi = 0.6180339887498948482;

}  // namespace

void validate(const SolverConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_iter < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("solver config needs rel_tol > 0, abs_tol > 0, max_iter >= 1 "
                            "(got {}, {}, {})",
                            cfg.rel_tol, cfg.abs_tol, cfg.max_iter));
  }
}

RootResult find_root(const ScalarFn& f, double lo, double hi, const SolverConfig& cfg) {
  validate(cfg);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, flo, lo, lo, 0};
  if (fhi == 0.0) return {hi, fhi, hi, hi, 0};
  if (same_sign(flo, fhi) || std::isnan(flo) || std::isnan(fhi)) {
    throw Error(ErrorCode::kBracket,
                fmt::format("f({}) = {} and f({}) = {} do not bracket a root", lo, flo,
                            hi, fhi));
  }
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid == lo || mid == hi) {
      return std::abs(flo) <= std::abs(fhi) ? RootResult{lo, flo, lo, hi, it}
                                            : RootResult{hi, fhi, lo, hi, it};
    }
    const double fmid = f(mid);
    if (fmid == 0.0) return {mid, fmid, mid, mid, it};
    if (same_sign(fmid, flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
    const double x = std::abs(flo) <= std::abs(fhi) ? lo : hi;
    if (std::abs(hi - lo) < std::max(cfg.abs_tol, cfg.rel_tol * std::abs(x))) {
      return x == lo ? RootResult{lo, flo, lo, hi, it} : RootResult{hi, fhi, lo, hi, it};
    }
  }
  throw Error(ErrorCode::kConvergence,
              fmt::format("bisection did not converge in {} iterations", cfg.max_iter));
}

Maximum maximize_unimodal(const ScalarFn& f, double lo, double hi, const SolverConfig& cfg) {
  validate(cfg);
  if (hi < lo) std::swap(lo, hi);
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (std::abs(b - a) >= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(0.5 * (a + b)))) {
    if (++it > cfg.max_iter) {
      throw Error(ErrorCode::kConvergence,
                  fmt::format("golden-section search did not converge in {} iterations",
                              cfg.max_iter));
    }
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;  // interval collapsed to rounding
  }
  Maximum best{fc >= fd ? c : d, std::max(fc, fd), it};
  if (f_lo > best.value) best = {lo, f_lo, it};
  if (f_hi > best.value) best = {hi, f_hi, it};
  return best;
}

double expand_bracket_upward(const ScalarFn& f, double lo, double start, double cap) {
  const double flo = f(lo);
  double hi = start;
  while (hi <= cap) {
    const double fhi = f(hi);
    if (!same_sign(flo, fhi)) return hi;
    hi *= 2.0;
  }
  throw Error(ErrorCode::kBracket,
              fmt::format("no sign change found on [{}, {}]", lo, cap));
}

}  // namespace infrashare
