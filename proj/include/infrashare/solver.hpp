#pragma once

#include <functional>

namespace infrashare {

struct SolverConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_iter = 200;

  bool operator==(const SolverConfig&) const = default;
};

/// Throws Error(kInvalidParameter) on non-positive tolerances or max_iter < 1.
void validate(const SolverConfig& cfg);

using ScalarFn = std::function<double(double)>;

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // f(x)
  double lo = 0.0;        // final bracket
  double hi = 0.0;
  int iterations = 0;
};

/// Bisection on a sign-changing bracket. Stops when the bracket is narrower
/// than max(abs_tol, rel_tol*|x|) or has collapsed to adjacent doubles.
/// Returns the endpoint with the smaller |f|.
/// Throws Error(kBracket) if f(lo)*f(hi) > 0, Error(kConvergence) on max_iter.
RootResult find_root(const ScalarFn& f, double lo, double hi,
                     const SolverConfig& cfg = {});

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Both endpoints are compared against the interior estimate, so boundary
/// maxima are returned exactly.
Maximum maximize_unimodal(const ScalarFn& f, double lo, double hi,
                          const SolverConfig& cfg = {});

/// Hard cap on upward bracket expansion.
inline constexpr double kBracketCap = 1152921504606846976.0;  // 2^60

/// Starting from `start` (> lo), doubles the upper end until
/// sign(f(hi)) != sign(f(lo)) and returns it. Throws Error(kBracket) once
/// the upper end passes `cap`.
double expand_bracket_upward(const ScalarFn& f, double lo, double start,
                             double cap = kBracketCap);

}  // namespace infrashare
