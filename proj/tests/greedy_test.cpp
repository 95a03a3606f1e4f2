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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "submod/analysis.hpp"
#include "submod/combiner.hpp"
#include "submod/greedy.hpp"
#include "submod/set_function.hpp"
#include "test_support.hpp"

namespace submod {
namespace {

using testsupport::brute_max;
using testsupport::brute_max_where;
using testsupport::for_all_masks;
using testsupport::random_integer_weights;
using testsupport::random_monotone_submodular;
using testsupport::random_positive_submodular;

double selected_psi(const GreedyResult& r) {
  return r.trace.chain[static_cast<std::size_t>(r.trace.selected_k)].psi_value;
}

TEST(RatioComparatorTest, OrdersPairsAsSpecified) {
  // Finite ratios by cross-multiplication.
  EXPECT_EQ(RatioComparator::compare(3, 2, 2, 2), 1);
  EXPECT_EQ(RatioComparator::compare(1, 3, 2, 3), -1);
  EXPECT_EQ(RatioComparator::compare(2, 4, 1, 2), 0);
  // Positive df with zero dg dominates everything finite.
  EXPECT_EQ(RatioComparator::compare(1, 0, 100, 0.001), 1);
  EXPECT_EQ(RatioComparator::compare(1, 0, 2, 0), 0);  // infinite class ties
  // Zero df ranks at the bottom and 0/0 ties with 0/b.
  EXPECT_EQ(RatioComparator::compare(0, 0, 1, 5), -1);
  EXPECT_EQ(RatioComparator::compare(0, 0, 0, 3), 0);
  EXPECT_EQ(RatioComparator::compare(0, 2, 1, 0), -1);
  // Tie-breaks: larger df, then smaller index.
  EXPECT_TRUE(RatioComparator::better(4, 2, 1, 2, 1, 0));
  EXPECT_TRUE(RatioComparator::better(2, 1, 0, 2, 1, 1));
  EXPECT_FALSE(RatioComparator::better(2, 1, 1, 2, 1, 0));
}

TEST(PsiGreedyTest, IdenticalFunctionsGiveZeroDifference) {
  std::mt19937_64 rng(41);
  const SetFunction f = random_monotone_submodular(rng, 7);
  const GreedyResult r = psi_greedy(f, f, difference_combiner());
  EXPECT_DOUBLE_EQ(selected_psi(r), 0.0);  // f - f is identically 0, the optimum
}

TEST(PsiGreedyTest, ModularExampleMatchesBruteForce) {
  const SetFunction f = make_modular({3, 1, 4});
  const SetFunction g = make_modular({2, 2, 1});
  const GreedyResult r = psi_greedy(f, g, difference_combiner());
  EXPECT_EQ(r.selected, SubsetMask::of({0, 2}, 3));
  EXPECT_DOUBLE_EQ(selected_psi(r), 4.0);
  const auto [best_mask, best_value] =
      brute_max(3, [&](const SubsetMask& s) { return f(s) - g(s); });
  EXPECT_DOUBLE_EQ(best_value, selected_psi(r));
  EXPECT_EQ(best_mask, r.selected);
}

// Exactness on modular inputs, difference and ratio objectives.
TEST(PsiGreedyTest, ModularInputsAreSolvedExactly) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 12));  // up to 14
    const SetFunction f = make_modular(
        random_integer_weights(rng, n, 0, 6),
        static_cast<double>(uniform_index(rng, 3)));
    const SetFunction g = make_modular(
        random_integer_weights(rng, n, 0, 6),
        static_cast<double>(1 + uniform_index(rng, 3)));

    const GreedyResult diff = psi_greedy(f, g, difference_combiner());
    const double diff_opt =
        brute_max(n, [&](const SubsetMask& s) { return f(s) - g(s); }).second;
    ASSERT_EQ(selected_psi(diff), diff_opt);  // integer weights: exact

    const GreedyResult ratio = psi_greedy(f, g, ratio_combiner());
    const double ratio_opt =
        brute_max(n, [&](const SubsetMask& s) { return f(s) / g(s); }).second;
    ASSERT_EQ(selected_psi(ratio), ratio_opt);
  }
}

// The curvature guarantee, quantified over every subset, for the three
// combiner shapes the theory covers.
TEST(PsiGreedyTest, CurvatureGuaranteeAgainstAllSubsets) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(uniform_index(rng, 7));  // up to 10
    const SetFunction f = random_monotone_submodular(rng, n);
    const SetFunction g = random_positive_submodular(rng, n);
    const double factor = 1.0 - std::exp(curvature(g) - 1.0);

    for (const Combiner& psi : {difference_combiner(), ratio_combiner()}) {
      const GreedyResult r = psi_greedy(f, g, psi);
      const double achieved = selected_psi(r);
      for_all_masks(n, [&](const SubsetMask& star) {
        ASSERT_LE(psi(factor * f(star), g(star)), achieved + 1e-9)
            << psi.name() << " violated at " << star.to_string();
      });
    }

    // f - sqrt(g) with modular g: curvature 0 gives the 1 - 1/e factor.
    const SetFunction gm = make_modular(random_integer_weights(rng, n, 1, 5), 1.0);
    const double factor_m = 1.0 - std::exp(curvature(gm) - 1.0);
    EXPECT_DOUBLE_EQ(factor_m, 1.0 - std::exp(-1.0));
    const Combiner psi = difference_sqrt_combiner();
    const GreedyResult r = psi_greedy(f, gm, psi);
    const double achieved = selected_psi(r);
    for_all_masks(n, [&](const SubsetMask& star) {
      ASSERT_LE(psi(factor_m * f(star), gm(star)), achieved + 1e-9);
    });
  }
}

TEST(PsiGreedyTest, RatioGuaranteeAgainstBruteOptimum) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(uniform_index(rng, 8));  // up to 12
    const SetFunction f = random_monotone_submodular(rng, n);
    const SetFunction g = random_positive_submodular(rng, n);
    const double factor = 1.0 - std::exp(curvature(g) - 1.0);
    const double optimum =
        brute_max(n, [&](const SubsetMask& s) { return f(s) / g(s); }).second;
    const GreedyResult r = psi_greedy(f, g, ratio_combiner());
    EXPECT_GE(selected_psi(r), factor * optimum - 1e-9);
  }
}

TEST(PsiGreedyTest, ChainGrowsByOneAndValuesAreMonotone) {
  std::mt19937_64 rng(59);
  const int n = 9;
  const SetFunction f = random_monotone_submodular(rng, n);
  const SetFunction g = random_positive_submodular(rng, n);
  const GreedyResult r = psi_greedy(f, g, ratio_combiner());
  ASSERT_EQ(r.trace.chain.size(), static_cast<std::size_t>(n + 1));
  SubsetMask previous(n);
  for (int k = 1; k <= n; ++k) {
    const SubsetMask s = r.trace.prefix(k, n);
    EXPECT_TRUE(previous.is_subset_of(s));
    EXPECT_EQ(s.cardinality(), k);
    // Monotone f and g make chain values non-decreasing; this is what
    // guarantees the crossing index in the approximation argument exists.
    EXPECT_GE(r.trace.chain[k].f_value, r.trace.chain[k - 1].f_value - 1e-12);
    EXPECT_GE(r.trace.chain[k].g_value, r.trace.chain[k - 1].g_value - 1e-12);
    previous = s;
  }
  // Recorded values match re-evaluation on the reconstructed prefix.
  const SubsetMask sel = r.trace.prefix(r.trace.selected_k, n);
  EXPECT_EQ(sel, r.selected);
  EXPECT_DOUBLE_EQ(f(sel), r.trace.chain[r.trace.selected_k].f_value);
}

TEST(PsiGreedyTest, SelectedKMaximizesRecordedPsi) {
  std::mt19937_64 rng(61);
  const SetFunction f = random_monotone_submodular(rng, 8);
  const SetFunction g = random_positive_submodular(rng, 8);
  const GreedyResult r = psi_greedy(f, g, difference_combiner());
  for (const auto& step : r.trace.chain)
    EXPECT_LE(step.psi_value, r.trace.chain[r.trace.selected_k].psi_value);
}

TEST(PsiGreedyTest, RatioRequiresPositiveEmptyG) {
  const SetFunction f = make_modular({1, 1});
  const SetFunction g = make_modular({1, 1});  // g(empty) = 0
  EXPECT_THROW(psi_greedy(f, g, ratio_combiner()), std::domain_error);
  EXPECT_NO_THROW(psi_greedy(f, shifted(g, 1.0), ratio_combiner()));
}

TEST(PsiGreedyTest, RequiresDeclaredFlags) {
  FunctionProps undeclared;
  const SetFunction f("raw", 3, undeclared,
                      [](const SubsetMask& s) { return static_cast<double>(s.cardinality()); });
  const SetFunction g = make_modular({1, 1, 1}, 1.0);
  EXPECT_THROW(psi_greedy(f, g, difference_combiner()), std::invalid_argument);
  EXPECT_THROW(psi_greedy(g, f, difference_combiner()), std::invalid_argument);
}

TEST(PsiGreedyTest, EagerOracleBudgetIsQuadratic) {
  std::mt19937_64 rng(67);
  const int n = 11;
  const SetFunction f = random_monotone_submodular(rng, n);
  const SetFunction g = random_positive_submodular(rng, n);
  const GreedyResult r = psi_greedy(f, g, difference_combiner());
  const std::uint64_t expected = 1 + static_cast<std::uint64_t>(n) * (n + 1) / 2;
  EXPECT_EQ(r.f_evals, expected);
  EXPECT_EQ(r.g_evals, expected);
}

TEST(LazyGreedyTest, TracesMatchEagerOnRandomInstances) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 8 + static_cast<int>(uniform_index(rng, 9));
    const SetFunction f = random_monotone_submodular(rng, n);
    // Alternate between modular g (fixed denominators) and general
    // submodular g (min-marginal bound path).
    const SetFunction g =
        trial % 2 == 0
            ? testsupport::tabulate(shifted(
                  make_modular(random_integer_weights(rng, n, 1, 9)), 1.0))
            : random_positive_submodular(rng, n);
    const Combiner psi = trial % 3 == 0 ? difference_combiner() : ratio_combiner();
    const GreedyResult eager = psi_greedy(f, g, psi, {.lazy = false});
    const GreedyResult lazy = psi_greedy(f, g, psi, {.lazy = true});
    ASSERT_EQ(eager.selected, lazy.selected);
    ASSERT_EQ(eager.trace.selected_k, lazy.trace.selected_k);
    ASSERT_EQ(eager.trace.chain.size(), lazy.trace.chain.size());
    for (std::size_t k = 0; k < eager.trace.chain.size(); ++k) {
      ASSERT_EQ(eager.trace.chain[k].element, lazy.trace.chain[k].element);
      ASSERT_EQ(eager.trace.chain[k].f_value, lazy.trace.chain[k].f_value);
      ASSERT_EQ(eager.trace.chain[k].g_value, lazy.trace.chain[k].g_value);
    }
    EXPECT_LE(lazy.f_evals, eager.f_evals);
    EXPECT_LE(lazy.g_evals + lazy.f_evals, eager.g_evals + eager.f_evals);
  }
}

TEST(LazyGreedyTest, ModularPairRefreshesOncePerStep) {
  // Distinct ratios: after the first full scan the bounds are exact, so each
  // later step pops exactly one element.
  const SetFunction f = testsupport::tabulate(make_modular({9, 6, 4, 2.5, 1}));
  const SetFunction g = testsupport::tabulate(make_modular({1, 1, 1, 1, 1}, 1.0));
  const int n = 5;
  const GreedyResult lazy = psi_greedy(f, g, difference_combiner(), {.lazy = true});
  // f calls: 1 (empty) + n (first scan) + 1 per later step.
  EXPECT_EQ(lazy.f_evals, static_cast<std::uint64_t>(1 + n + (n - 1)));
  // g calls: 1 (empty) + n (weight pins) + 1 fresh eval per later step.
  EXPECT_EQ(lazy.g_evals, static_cast<std::uint64_t>(1 + n + (n - 1)));
  const GreedyResult eager = psi_greedy(f, g, difference_combiner());
  EXPECT_EQ(eager.selected, lazy.selected);
  EXPECT_LE(lazy.f_evals, eager.f_evals);
  EXPECT_LE(lazy.g_evals, eager.g_evals);
}

TEST(KnapsackGreedyTest, InactiveConstraintDominatesPlainGreedy) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + static_cast<int>(uniform_index(rng, 4));
    const SetFunction f = random_monotone_submodular(rng, n);
    const SetFunction g = random_positive_submodular(rng, n);
    const double budget = g(SubsetMask::full(n)) + 1.0;
    const KnapsackResult constrained =
        knapsack_psi_greedy(f, g, difference_combiner(), budget, budget);
    const GreedyResult plain = psi_greedy(f, g, difference_combiner());
    EXPECT_GE(constrained.psi_value, selected_psi(plain) - 1e-12);
    EXPECT_LE(g(constrained.selected), budget);
  }
}

TEST(KnapsackGreedyTest, OnlyEmptySetFeasible) {
  // Every singleton busts the budget; the empty set is the only choice.
  const SetFunction f = make_modular({5, 5, 5});
  const SetFunction g = make_modular({10, 11, 12}, 1.0);  // g(empty) = 1
  const KnapsackResult r = knapsack_psi_greedy(f, g, difference_combiner(), 2.0, 0.5);
  EXPECT_TRUE(r.selected.empty());
  EXPECT_DOUBLE_EQ(r.f_value, 0.0);
}

TEST(KnapsackGreedyTest, InfeasibleBudgetIsReported) {
  const SetFunction f = make_modular({1, 1});
  const SetFunction g = make_modular({1, 1}, 5.0);  // g(empty) = 5
  EXPECT_THROW(knapsack_psi_greedy(f, g, difference_combiner(), 4.0, 0.5),
               InfeasibleError);
}

TEST(KnapsackGreedyTest, RejectsBadParameters) {
  const SetFunction f = make_modular({1, 1});
  const SetFunction g = make_modular({1, 1});
  EXPECT_THROW(knapsack_psi_greedy(f, g, difference_combiner(), 1.0, 0.0),
               std::invalid_argument);
  EXPECT_THROW(knapsack_psi_greedy(f, g, difference_combiner(), -1.0, 0.5),
               std::invalid_argument);
  const Combiner no_flags("plain-diff", [](double a, double b) { return a - b; },
                          CombinerProps{true, true, false});
  EXPECT_THROW(knapsack_psi_greedy(f, g, no_flags, 1.0, 0.5), std::invalid_argument);
}

// The knapsack guarantee: against every feasible subset, with the g-side of
// Psi relaxed by eps.
TEST(KnapsackGreedyTest, GuaranteeAgainstAllFeasibleSubsets) {
  std::mt19937_64 rng(79);
  const Combiner psi = difference_combiner();
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 6 + static_cast<int>(uniform_index(rng, 2));
    const SetFunction f = random_monotone_submodular(rng, n);
    const SetFunction g = random_positive_submodular(rng, n);
    const double g_full = g(SubsetMask::full(n));
    const double g_empty = g(SubsetMask(n));
    const double budget = g_empty + (0.3 + 0.5 * canonical_unit(rng)) * (g_full - g_empty);
    const double eps = (0.05 + 0.15 * canonical_unit(rng)) * budget;
    const double factor = 1.0 - std::exp(curvature(g) - 1.0);
    const KnapsackResult r = knapsack_psi_greedy(f, g, psi, budget, eps);
    EXPECT_LE(g(r.selected), budget + 1e-12);
    for_all_masks(n, [&](const SubsetMask& star) {
      if (g(star) > budget) return;
      ASSERT_LE(psi(factor * f(star), g(star)), psi(r.f_value, r.g_value - eps) + 1e-9);
    });
  }
}

TEST(KnapsackGreedyTest, TinyUniverseFallsBackToEnumeration) {
  // n = 2: no size-3 seeds exist; the pair enumeration must carry the result.
  const SetFunction f = make_modular({4, 1});
  const SetFunction g = make_modular({1, 1}, 1.0);
  const KnapsackResult r = knapsack_psi_greedy(f, g, difference_combiner(), 10.0, 1.0);
  const auto [best, value] = brute_max_where(
      2, [&](const SubsetMask& s) { return f(s) - g(s); },
      [&](const SubsetMask& s) { return g(s) <= 10.0; });
  EXPECT_DOUBLE_EQ(r.psi_value, value);
  EXPECT_EQ(r.selected, best);
}

}  // namespace
}  // namespace submod
