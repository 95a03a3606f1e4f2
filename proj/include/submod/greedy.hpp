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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "submod/combiner.hpp"
#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

/// Raised when a constrained problem has no feasible solution.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Division-free ordering on marginal-gain pairs (df, dg), df, dg >= 0,
/// by the ratio df/dg. Cross-multiplication keeps dg == 0 well-defined:
/// a positive df with zero dg outranks every finite ratio, and pairs with
/// df == 0 (including 0/0) form the bottom class.
struct RatioComparator {
  /// -1, 0, +1 on the ratio preorder alone (no tie-breaking).
  static int compare(double df1, double dg1, double df2, double dg2) {
    const bool inf1 = df1 > 0.0 && dg1 == 0.0;
    const bool inf2 = df2 > 0.0 && dg2 == 0.0;
    if (inf1 || inf2) {
      if (inf1 && inf2) return 0;
      return inf1 ? 1 : -1;
    }
    const bool zero1 = df1 == 0.0;
    const bool zero2 = df2 == 0.0;
    if (zero1 || zero2) {
      if (zero1 && zero2) return 0;
      return zero1 ? -1 : 1;
    }
    const double lhs = df1 * dg2;
    const double rhs = df2 * dg1;
    if (lhs > rhs) return 1;
    if (lhs < rhs) return -1;
    return 0;
  }

  /// Full selection order: ratio, then larger df, then smaller element index.
  static bool better(double df1, double dg1, int i1, double df2, double dg2, int i2) {
    const int c = compare(df1, dg1, df2, dg2);
    if (c != 0) return c > 0;
    if (df1 != df2) return df1 > df2;
    return i1 < i2;
  }
};

struct GreedyStep {
  int k = 0;          // chain position; k elements selected so far
  int element = -1;   // element added at this step; -1 for the k = 0 entry
  double f_value = 0.0;
  double g_value = 0.0;
  double psi_value = 0.0;
};

/// The full greedy chain S_0 c S_1 c ... c S_n with per-step values, plus
/// the index of the prefix the final argmax selected.
struct GreedyTrace {
  std::vector<GreedyStep> chain;
  int selected_k = 0;

  /// Reconstructs the prefix S_k from the recorded element sequence.
  SubsetMask prefix(int k, int n) const {
    SubsetMask s(n);
    for (int j = 1; j <= k; ++j) s.add(chain[static_cast<std::size_t>(j)].element);
    return s;
  }
};

struct GreedyResult {
  SubsetMask selected;
  GreedyTrace trace;
  std::uint64_t f_evals = 0;  // oracle calls spent by this run
  std::uint64_t g_evals = 0;
};

struct GreedyOptions {
  bool lazy = false;
};

namespace detail {

// Monotone oracles can return marginals a few ulps below zero.
inline double clamp_gain(double d) { return d > 0.0 ? d : 0.0; }

inline void require_monotone_submodular(const SetFunction& fn, const char* caller,
                                        const char* role) {
  if (!fn.props().monotone || !fn.props().submodular)
    throw std::invalid_argument(std::string(caller) + ": " + role +
                                " must be declared monotone submodular");
}

// Lazy selection state. Queue priorities are sound upper bounds on the
// current marginal pair under RatioComparator: df bounds shrink as the chain
// grows (submodularity of f) and the stored denominator floor never exceeds
// any future dg (the fixed weight for modular g, otherwise the precomputed
// minimum marginal g(i | [n]\{i})).
struct LazyState {
  struct Entry {
    double df_bound;
    double dg_floor;
    int element;
    std::uint64_t stamp;  // matches stamps[element] if this copy is current
  };
  struct Order {
    bool operator()(const Entry& a, const Entry& b) const {
      return RatioComparator::better(b.df_bound, b.dg_floor, b.element,
                                     a.df_bound, a.dg_floor, a.element);
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Order> heap;
  std::vector<std::uint64_t> stamps;
  std::vector<double> dg_floor;   // sound lower bound on every future dg
  std::vector<double> dg_weight;  // exact dg when the denominator is fixed
  std::vector<int> refreshed_at;  // step of the last exact refresh
  bool fixed_denominator = false;
};

// True when `bound` might outrank the exact incumbent under the full
// selection order; conservative on ties.
inline bool could_beat(double bound_df, double bound_dg, int elem, double best_df,
                       double best_dg, int best_elem) {
  const int c = RatioComparator::compare(bound_df, bound_dg, best_df, best_dg);
  if (c != 0) return c > 0;
  if (bound_df != best_df) return bound_df > best_df;
  return elem < best_elem;
}

}  // namespace detail

/// Greedy chain construction for objectives Psi(f(S), g(S)): grows S by the
/// element maximizing the marginal-gain ratio f(i|S)/g(i|S) (RatioComparator
/// order), then returns the chain prefix with the best Psi value, the k = 0
/// empty prefix included.
///
/// Requires f and g declared monotone submodular; combiners with a positive
/// second-argument domain (ratio family) additionally require g(empty) > 0.
/// The lazy variant returns the identical chain and selection while skipping
/// marginal refreshes its upper-bound certificates prove unnecessary.
inline GreedyResult psi_greedy(const SetFunction& f, const SetFunction& g,
                               const Combiner& psi, const GreedyOptions& options = {}) {
  detail::require_monotone_submodular(f, "psi_greedy", "f");
  detail::require_monotone_submodular(g, "psi_greedy", "g");
  if (f.ground_size() != g.ground_size())
    throw std::invalid_argument("psi_greedy: f and g ground sets differ");
  const int n = f.ground_size();
  const std::uint64_t f_calls0 = f.eval_count();
  const std::uint64_t g_calls0 = g.eval_count();

  SubsetMask current(n);
  double f_current = f(current);
  double g_current = g(current);
  if (psi.second_arg_domain() == Combiner::SecondArg::kPositive && !(g_current > 0.0))
    throw std::domain_error("psi_greedy: " + psi.name() + " requires g(empty) > 0");

  GreedyResult result;
  result.trace.chain.push_back({0, -1, f_current, g_current, psi(f_current, g_current)});

  detail::LazyState lazy;
  if (options.lazy) {
    lazy.fixed_denominator = g.props().modular;
    lazy.stamps.assign(static_cast<std::size_t>(n), 0);
    lazy.dg_floor.assign(static_cast<std::size_t>(n), 0.0);
    lazy.dg_weight.assign(static_cast<std::size_t>(n), 0.0);
    lazy.refreshed_at.assign(static_cast<std::size_t>(n), -1);
    if (!lazy.fixed_denominator) {
      const SubsetMask all = SubsetMask::full(n);
      const double g_all = g(all);
      for (int i = 0; i < n; ++i) {
        SubsetMask without = all;
        without.remove(i);
        lazy.dg_floor[static_cast<std::size_t>(i)] =
            detail::clamp_gain(g_all - g(without));
      }
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      lazy.heap.push({inf, 0.0, i, 0});  // sentinel: above every finite pair
  }

  SubsetMask scratch(n);
  for (int k = 1; k <= n; ++k) {
    int best_elem = -1;
    double best_df = 0.0, best_dg = 0.0;
    double best_f_new = 0.0, best_g_new = 0.0;
    bool best_g_fresh = true;

    auto offer = [&](int i, double df, double dg, double f_new, double g_new,
                     bool g_fresh) {
      if (best_elem < 0 ||
          RatioComparator::better(df, dg, i, best_df, best_dg, best_elem)) {
        best_elem = i;
        best_df = df;
        best_dg = dg;
        best_f_new = f_new;
        best_g_new = g_new;
        best_g_fresh = g_fresh;
      }
    };

    auto refresh = [&](int i) {
      scratch = current;
      scratch.add(i);
      const double f_new = f(scratch);
      const double g_new = g(scratch);
      const double df = detail::clamp_gain(f_new - f_current);
      const double dg = detail::clamp_gain(g_new - g_current);
      offer(i, df, dg, f_new, g_new, true);
      return std::pair<double, double>{df, dg};
    };

    if (!options.lazy) {
      for (int i = 0; i < n; ++i)
        if (!current.contains(i)) refresh(i);
    } else {
      std::vector<detail::LazyState::Entry> parked;
      while (!lazy.heap.empty()) {
        detail::LazyState::Entry top = lazy.heap.top();
        const auto e = static_cast<std::size_t>(top.element);
        if (top.stamp != lazy.stamps[e]) {  // superseded copy
          lazy.heap.pop();
          continue;
        }
        if (best_elem >= 0 &&
            !detail::could_beat(top.df_bound, top.dg_floor, top.element, best_df,
                                best_dg, best_elem)) {
          break;  // certificate: no remaining bound can outrank the incumbent
        }
        lazy.heap.pop();
        if (lazy.refreshed_at[e] == k) {
          parked.push_back(top);  // already exact this step; cannot improve
          continue;
        }
        double df, dg;
        if (lazy.fixed_denominator) {
          scratch = current;
          scratch.add(top.element);
          const double f_new = f(scratch);
          df = detail::clamp_gain(f_new - f_current);
          if (lazy.refreshed_at[e] < 0) {
            // First touch: one g call pins the constant marginal.
            const double g_new = g(scratch);
            dg = detail::clamp_gain(g_new - g_current);
            lazy.dg_weight[e] = dg;
            lazy.dg_floor[e] = dg;
            offer(top.element, df, dg, f_new, g_new, true);
          } else {
            dg = lazy.dg_weight[e];
            offer(top.element, df, dg, f_new, g_current + dg, false);
          }
        } else {
          std::tie(df, dg) = refresh(top.element);
        }
        lazy.refreshed_at[e] = k;
        const std::uint64_t stamp = ++lazy.stamps[e];
        lazy.heap.push({df, lazy.dg_floor[e], top.element, stamp});
      }
      for (const auto& entry : parked) lazy.heap.push(entry);
    }

    // best_elem is the eager argmax under the (ratio, df, index) order.
    if (!best_g_fresh) {
      // Re-evaluate so recorded chain values match the eager run bit for bit.
      scratch = current;
      scratch.add(best_elem);
      best_g_new = g(scratch);
    }
    current.add(best_elem);
    f_current = best_f_new;
    g_current = best_g_new;
    result.trace.chain.push_back(
        {k, best_elem, f_current, g_current, psi(f_current, g_current)});
    if (options.lazy) ++lazy.stamps[static_cast<std::size_t>(best_elem)];
  }

  int best_k = 0;
  for (int k = 1; k <= n; ++k) {
    if (result.trace.chain[static_cast<std::size_t>(k)].psi_value >
        result.trace.chain[static_cast<std::size_t>(best_k)].psi_value)
      best_k = k;
  }
  result.trace.selected_k = best_k;
  result.selected = result.trace.prefix(best_k, n);
  result.f_evals = f.eval_count() - f_calls0;
  result.g_evals = g.eval_count() - g_calls0;
  return result;
}

struct KnapsackResult {
  SubsetMask selected;
  double psi_value = 0.0;
  double f_value = 0.0;
  double g_value = 0.0;
};

namespace detail {

struct Candidate {
  bool set = false;
  SubsetMask mask;
  double psi = 0.0, f = 0.0, g = 0.0;

  // Strict Psi improvement with numerically-smallest-mask tie-break, so the
  // winner does not depend on enumeration or schedule order.
  void offer(const SubsetMask& m, double psi_v, double f_v, double g_v) {
    if (!set || psi_v > psi || (psi_v == psi && m.compare_numeric(mask) < 0)) {
      set = true;
      mask = m;
      psi = psi_v;
      f = f_v;
      g = g_v;
    }
  }
};

// Greedy completion on the complement of `init`, admitting only elements
// that keep g within `level`; returns the Psi-best prefix of the chain
// (the initialization included).
inline Candidate constrained_completion(const SetFunction& f, const SetFunction& g,
                                        const Combiner& psi, const SubsetMask& init,
                                        double f_init, double g_init, double level) {
  const int n = f.ground_size();
  SubsetMask current = init;
  double f_current = f_init;
  double g_current = g_init;
  Candidate best;
  best.offer(current, psi(f_current, g_current), f_current, g_current);
  SubsetMask scratch(n);
  while (true) {
    int best_elem = -1;
    double best_df = 0.0, best_dg = 0.0, best_f_new = 0.0, best_g_new = 0.0;
    for (int i = 0; i < n; ++i) {
      if (current.contains(i)) continue;
      scratch = current;
      scratch.add(i);
      const double g_new = g(scratch);
      if (g_new > level) continue;
      const double f_new = f(scratch);
      const double df = clamp_gain(f_new - f_current);
      const double dg = clamp_gain(g_new - g_current);
      if (best_elem < 0 ||
          RatioComparator::better(df, dg, i, best_df, best_dg, best_elem)) {
        best_elem = i;
        best_df = df;
        best_dg = dg;
        best_f_new = f_new;
        best_g_new = g_new;
      }
    }
    if (best_elem < 0) break;  // no admissible element left
    current.add(best_elem);
    f_current = best_f_new;
    g_current = best_g_new;
    best.offer(current, psi(f_current, g_current), f_current, g_current);
  }
  return best;
}

}  // namespace detail

/// Knapsack-constrained greedy for Psi(f, g) under g(S) <= budget: partial
/// enumeration of all feasible sets of size <= 2, plus greedy completions of
/// every feasible size-3 seed at each budget level b*eps for
/// b in {1, ..., floor(budget/eps)} and the exact top level budget.
///
/// Requires Psi nondecreasing in its first and nonincreasing in its second
/// argument. Cost grows as n^3 greedy runs; intended for moderate n.
inline KnapsackResult knapsack_psi_greedy(const SetFunction& f, const SetFunction& g,
                                          const Combiner& psi, double budget,
                                          double eps) {
  detail::require_monotone_submodular(f, "knapsack_psi_greedy", "f");
  detail::require_monotone_submodular(g, "knapsack_psi_greedy", "g");
  if (f.ground_size() != g.ground_size())
    throw std::invalid_argument("knapsack_psi_greedy: ground sets differ");
  if (!(eps > 0.0)) throw std::invalid_argument("knapsack_psi_greedy: eps must be > 0");
  if (!(budget >= 0.0))
    throw std::invalid_argument("knapsack_psi_greedy: budget must be >= 0");
  if (!psi.props().nondecreasing_first || !psi.props().nonincreasing_second)
    throw std::invalid_argument(
        "knapsack_psi_greedy: Psi must be nondecreasing in f and nonincreasing in g");

  const int n = f.ground_size();
  const SubsetMask empty(n);
  const double g_empty = g(empty);
  if (g_empty > budget)
    throw InfeasibleError("knapsack_psi_greedy: g(empty) exceeds the budget");
  const double f_empty = f(empty);
  if (psi.second_arg_domain() == Combiner::SecondArg::kPositive && !(g_empty > 0.0))
    throw std::domain_error("knapsack_psi_greedy: " + psi.name() +
                            " requires g(empty) > 0");

  // Budget levels {eps, 2*eps, ..., floor(budget/eps)*eps} plus budget itself.
  const double level_count = std::floor(budget / eps);
  if (level_count > 1e6)
    throw std::invalid_argument(
        "knapsack_psi_greedy: budget/eps yields more than 1e6 levels");
  std::vector<double> levels;
  for (long long b = 1; b <= static_cast<long long>(level_count); ++b)
    levels.push_back(static_cast<double>(b) * eps);
  if (levels.empty() || levels.back() != budget) levels.push_back(budget);

  // Best feasible set of cardinality <= 2.
  detail::Candidate small;
  small.offer(empty, psi(f_empty, g_empty), f_empty, g_empty);
  SubsetMask scratch(n);
  for (int i = 0; i < n; ++i) {
    scratch = empty;
    scratch.add(i);
    const double g_v = g(scratch);
    if (g_v > budget) continue;
    const double f_v = f(scratch);
    small.offer(scratch, psi(f_v, g_v), f_v, g_v);
    for (int j = i + 1; j < n; ++j) {
      SubsetMask two = scratch;
      two.add(j);
      const double g_p = g(two);
      if (g_p > budget) continue;
      const double f_p = f(two);
      small.offer(two, psi(f_p, g_p), f_p, g_p);
    }
  }

  // Greedy completions from every feasible size-3 seed at every level.
  detail::Candidate completed;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        SubsetMask seed(n);
        seed.add(i);
        seed.add(j);
        seed.add(k);
        const double g_seed = g(seed);
        if (g_seed > budget) continue;
        const double f_seed = f(seed);
        for (double level : levels) {
          detail::Candidate run = detail::constrained_completion(
              f, g, psi, seed, f_seed, g_seed, level);
          completed.offer(run.mask, run.psi, run.f, run.g);
        }
      }

  detail::Candidate final_pick = small;
  if (completed.set)
    final_pick.offer(completed.mask, completed.psi, completed.f, completed.g);
  return KnapsackResult{final_pick.mask, final_pick.psi, final_pick.f, final_pick.g};
}

}  // namespace submod
