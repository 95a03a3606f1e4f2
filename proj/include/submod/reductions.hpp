// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

/// Raised when an inner solver visibly breaks its contract (wrong-universe
/// answer, NaN objective, or a certified invariant failing).
struct SolverFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An approximation oracle for one of the two base problems. The contract,
/// for every subset x':
///   kRatio:      f(x)/g(x) >= alpha * f(x')/g(x')
///   kDifference: f(x)-g(x) >= alpha * f(x') - g(x')   (weak form)
struct ApproxSolver {
  enum class Kind { kRatio, kDifference };

  Kind kind = Kind::kRatio;
  double alpha = 1.0;
  std::function<SubsetMask(const SetFunction&, const SetFunction&)> solve;
};

/// One bisection iteration: the midpoint tried, the inner solver's answer
/// and its objective pieces, and the certified interval after the update.
struct ReductionStep {
  double pivot = 0.0;  // the shift c, or the scale lambda
  SubsetMask y;
  double f_y = 0.0;
  double g_y = 0.0;
  bool raised_lower = false;  // midpoint became the new lower bound
  double lower = 0.0;
  double upper = 0.0;
};

struct ReductionResult {
  SubsetMask x;
  double objective = 0.0;   // f(x)-g(x) or f(x)/g(x) of the answer
  double lower = 0.0;       // certified lower bound on the answer's objective
  double upper = 0.0;       // certified upper bound on alpha-scaled optimum
  int iterations = 0;       // equals the number of inner-solver calls
  std::vector<ReductionStep> trace;
};

/// Extremizer overrides for non-monotone uses; the defaults are the
/// monotone instantiation x_f = [n] (argmax f) and x_g = empty (argmin g).
struct ReductionOptions {
  std::optional<SubsetMask> x_f;
  std::optional<SubsetMask> x_g;
  bool record_trace = true;
};

namespace detail {

inline void check_eps(double eps, const char* caller) {
  if (!(eps > 0.0)) throw std::invalid_argument(std::string(caller) + ": eps must be > 0");
}

inline SubsetMask call_solver(const ApproxSolver& solver, const SetFunction& f,
                              const SetFunction& g, int n, const char* caller) {
  SubsetMask y = solver.solve(f, g);
  if (y.universe_size() != n)
    throw SolverFault(std::string(caller) + ": inner solver returned a mask over the wrong universe");
  return y;
}

inline void check_finite(double v, const char* caller) {
  if (std::isnan(v)) throw SolverFault(std::string(caller) + ": oracle produced NaN");
}

// Interval too narrow to split at double precision.
inline bool interval_vanished(double lo, double hi) {
  return hi - lo < std::ldexp(std::max(1.0, std::abs(hi)), -50);
}

}  // namespace detail

/// Weak difference approximation from a ratio approximation oracle.
/// Bisects an additive shift c applied to g and calls the ratio solver on
/// (f, g + c); returns x with
///   alpha * f(x') - g(x') <= f(x) - g(x) + eps   for all x'.
/// Iterations are bounded by ceil(log2((c+ - c-) / eps)) for the initial
/// interval c- = f(x_g) - g(x_g), c+ = alpha * f(x_f) - g(x_g).
inline ReductionResult difference_from_ratio(const ApproxSolver& ratio_solver,
                                             const SetFunction& f, const SetFunction& g,
                                             double eps,
                                             const ReductionOptions& options = {}) {
  detail::check_eps(eps, "difference_from_ratio");
  if (ratio_solver.kind != ApproxSolver::Kind::kRatio)
    throw std::invalid_argument("difference_from_ratio: inner solver must be a ratio solver");
  const int n = f.ground_size();
  const SubsetMask x_f = options.x_f.value_or(SubsetMask::full(n));
  const SubsetMask x_g = options.x_g.value_or(SubsetMask(n));

  const double f_xg = f(x_g);
  const double g_xg = g(x_g);
  double lower = f_xg - g_xg;
  double upper = ratio_solver.alpha * f(x_f) - g_xg;
  detail::check_finite(lower, "difference_from_ratio");
  detail::check_finite(upper, "difference_from_ratio");

  ReductionResult result;
  result.x = x_g;
  result.objective = f_xg - g_xg;

  while (upper - lower > eps && !detail::interval_vanished(lower, upper)) {
    const double c = (upper + lower) / 2.0;
    // Shift positivity: c > c- >= f(x_g) - g(x_g) keeps g + c > 0 on a
    // monotone g with non-negative f; verified, not assumed.
    if (!(g_xg + c > 0.0))
      throw SolverFault("difference_from_ratio: shifted denominator not positive");
    SubsetMask y = detail::call_solver(ratio_solver, f, shifted(g, c), n,
                                       "difference_from_ratio");
    const double f_y = f(y);
    const double g_y = g(y);
    detail::check_finite(f_y - g_y, "difference_from_ratio");
    bool raised = false;
    if (f_y - g_y <= c) {
      upper = c;
    } else {
      lower = c;
      raised = true;
      result.x = std::move(y);
      result.objective = f_y - g_y;
    }
    ++result.iterations;
    if (options.record_trace)
      result.trace.push_back({c, raised ? result.x : y, f_y, g_y, raised, lower, upper});
    if (lower > result.objective + 1e-12 * (1.0 + std::abs(lower)))
      throw SolverFault("difference_from_ratio: certified lower bound exceeds incumbent");
  }
  result.lower = lower;
  result.upper = upper;
  return result;
}

/// Weak ratio approximation from a difference approximation oracle.
/// Bisects a scale lambda applied to g and calls the difference solver on
/// (f, lambda * g); returns x with
///   alpha * f(x')/g(x') <= f(x)/g(x) + eps   for all x'.
inline ReductionResult ratio_from_difference(const ApproxSolver& difference_solver,
                                             const SetFunction& f, const SetFunction& g,
                                             double eps,
                                             const ReductionOptions& options = {}) {
  detail::check_eps(eps, "ratio_from_difference");
  if (difference_solver.kind != ApproxSolver::Kind::kDifference)
    throw std::invalid_argument("ratio_from_difference: inner solver must be a difference solver");
  const int n = f.ground_size();
  const SubsetMask x_f = options.x_f.value_or(SubsetMask::full(n));
  const SubsetMask x_g = options.x_g.value_or(SubsetMask(n));

  const double g_xg = g(x_g);
  if (!(g_xg > 0.0))
    throw std::domain_error("ratio_from_difference: g must be positive");
  double lower = f(x_g) / g_xg;
  double upper = difference_solver.alpha * f(x_f) / g_xg;
  detail::check_finite(lower, "ratio_from_difference");
  detail::check_finite(upper, "ratio_from_difference");

  ReductionResult result;
  result.x = x_g;
  result.objective = lower;

  while (upper - lower > eps && !detail::interval_vanished(lower, upper)) {
    const double lambda = (upper + lower) / 2.0;
    SubsetMask y = detail::call_solver(difference_solver, f, scaled(g, lambda), n,
                                       "ratio_from_difference");
    const double f_y = f(y);
    const double g_y = g(y);
    if (!(g_y > 0.0))
      throw SolverFault("ratio_from_difference: g(y) not positive");
    const double ratio_y = f_y / g_y;
    detail::check_finite(ratio_y, "ratio_from_difference");
    bool raised = false;
    if (ratio_y <= lambda) {
      upper = lambda;
    } else {
      lower = lambda;
      raised = true;
      result.x = std::move(y);
      result.objective = ratio_y;
    }
    ++result.iterations;
    if (options.record_trace)
      result.trace.push_back({lambda, raised ? result.x : y, f_y, g_y, raised, lower, upper});
    if (lower > result.objective + 1e-12 * (1.0 + std::abs(lower)))
      throw SolverFault("ratio_from_difference: certified lower bound exceeds incumbent");
  }
  result.lower = lower;
  result.upper = upper;
  return result;
}

/// Classic binary search for the exact ratio optimum, given an exact
/// difference maximizer: the alpha = 1 case of ratio_from_difference, kept
/// as a named entry point. The final ratio is within eps of the optimum.
inline ReductionResult exact_ratio_by_bisection(const ApproxSolver& exact_difference,
                                                const SetFunction& f,
                                                const SetFunction& g, double eps,
                                                const ReductionOptions& options = {}) {
  if (exact_difference.alpha != 1.0)
    throw std::invalid_argument("exact_ratio_by_bisection: solver must be exact (alpha = 1)");
  return ratio_from_difference(exact_difference, f, g, eps, options);
}

struct DinkelbachStep {
  double lambda = 0.0;
  SubsetMask x;
  double residual = 0.0;  // max of f - lambda*g found by the solver
};

struct DinkelbachResult {
  SubsetMask x;
  double ratio = 0.0;
  int solver_calls = 0;
  std::vector<DinkelbachStep> trace;  // strictly increasing lambda sequence
};

/// Iterative ratio maximization: repeatedly maximize f - lambda*g at the
/// incumbent ratio lambda, stopping once the residual drops below
/// eps * g(x_g), which certifies lambda >= optimum - eps. Requires an exact
/// difference maximizer and positive g.
inline DinkelbachResult dinkelbach_ratio(const ApproxSolver& exact_difference,
                                         const SetFunction& f, const SetFunction& g,
                                         const SubsetMask& start, double eps,
                                         const ReductionOptions& options = {}) {
  detail::check_eps(eps, "dinkelbach_ratio");
  if (exact_difference.kind != ApproxSolver::Kind::kDifference ||
      exact_difference.alpha != 1.0)
    throw std::invalid_argument("dinkelbach_ratio: needs an exact difference maximizer");
  const int n = f.ground_size();
  const SubsetMask x_g = options.x_g.value_or(SubsetMask(n));
  const double g_floor = g(x_g);
  if (!(g_floor > 0.0)) throw std::domain_error("dinkelbach_ratio: g must be positive");

  DinkelbachResult result;
  result.x = start;
  result.ratio = f(start) / g(start);
  detail::check_finite(result.ratio, "dinkelbach_ratio");
  result.trace.push_back({result.ratio, result.x, 0.0});

  // The convergence theory gives no step bound; cap defensively.
  const long long cap =
      std::max<long long>(1, 10LL * n * static_cast<long long>(
                                            std::ceil(std::log2(std::max(2.0, 1.0 / eps)))));
  for (long long it = 0; it < cap; ++it) {
    SubsetMask y = detail::call_solver(exact_difference, f, scaled(g, result.ratio), n,
                                       "dinkelbach_ratio");
    ++result.solver_calls;
    const double f_y = f(y);
    const double g_y = g(y);
    const double residual = f_y - result.ratio * g_y;
    detail::check_finite(residual, "dinkelbach_ratio");
    result.trace.back().residual = residual;
    if (residual < eps * g_floor) return result;  // lambda >= lambda* - eps
    if (!(g_y > 0.0)) throw SolverFault("dinkelbach_ratio: g(y) not positive");
    const double next = f_y / g_y;
    if (!(next > result.ratio))
      throw SolverFault("dinkelbach_ratio: ratio sequence failed to increase");
    result.x = std::move(y);
    result.ratio = next;
    result.trace.push_back({next, result.x, 0.0});
  }
  throw SolverFault("dinkelbach_ratio: iteration cap reached without certification");
}

/// Exact (alpha = 1) solver by subset enumeration; ties resolve to the
/// numerically smallest mask. Guarded to n <= 24.
inline ApproxSolver brute_force_solver(ApproxSolver::Kind kind) {
  ApproxSolver solver;
  solver.kind = kind;
  solver.alpha = 1.0;
  solver.solve = [kind](const SetFunction& f, const SetFunction& g) {
    const int n = f.ground_size();
    if (n > 24) throw std::invalid_argument("brute_force_solver: n must be <= 24");
    if (g.ground_size() != n)
      throw std::invalid_argument("brute_force_solver: ground sets differ");
    const std::uint64_t count = std::uint64_t{1} << n;
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t best_bits = 0;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      const SubsetMask s = SubsetMask::from_bits(bits, n);
      const double value = kind == ApproxSolver::Kind::kRatio ? f(s) / g(s) : f(s) - g(s);
      if (value > best) {
        best = value;
        best_bits = bits;
      }
    }
    return SubsetMask::from_bits(best_bits, n);
  };
  return solver;
}

}  // namespace submod
