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
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "submod/random.hpp"
#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

/// Permutation-based modular lower bound of a submodular f, anchored at X:
/// for a permutation sigma whose first |X| entries are exactly X,
///   gains[sigma(i)] = f(sigma(i) | {sigma(1..i-1)}),
///   evaluate(A) = f(empty) + sum of gains over A.
/// Tight on X (telescoping) and a global lower bound of f everywhere.
struct ModularLowerBound {
  std::vector<int> order;     // the permutation sigma
  std::vector<double> gains;  // indexed by element, not by position
  double f_empty = 0.0;

  double evaluate(const SubsetMask& a) const {
    double v = f_empty;
    a.for_each([&](int i) { v += gains[static_cast<std::size_t>(i)]; });
    return v;
  }
};

/// Builds the lower bound along a random permutation: a uniform order of the
/// anchor first, then a uniform order of its complement. Costs n+1 oracle
/// calls (the prefix chain of sigma).
inline ModularLowerBound modular_lower_bound(const SetFunction& f,
                                             const SubsetMask& anchor,
                                             std::mt19937_64& rng) {
  if (!f.props().submodular)
    throw std::invalid_argument("modular_lower_bound: f must be declared submodular");
  const int n = f.ground_size();
  if (anchor.universe_size() != n)
    throw std::invalid_argument("modular_lower_bound: anchor universe mismatch");

  ModularLowerBound bound;
  bound.order = anchor.elements();
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (!anchor.contains(i)) rest.push_back(i);
  auto shuffle = [&rng](std::vector<int>& v, std::size_t from) {
    for (std::size_t i = v.size(); i > from + 1; --i) {
      const std::size_t j = from + uniform_index(rng, i - from);
      std::swap(v[i - 1], v[j]);
    }
  };
  shuffle(bound.order, 0);
  bound.order.insert(bound.order.end(), rest.begin(), rest.end());
  shuffle(bound.order, static_cast<std::size_t>(anchor.cardinality()));

  bound.gains.assign(static_cast<std::size_t>(n), 0.0);
  SubsetMask prefix(n);
  bound.f_empty = f(prefix);
  double previous = bound.f_empty;
  for (int element : bound.order) {
    prefix.add(element);
    const double value = f(prefix);
    bound.gains[static_cast<std::size_t>(element)] = value - previous;
    previous = value;
  }
  return bound;
}

struct ModModResult {
  SubsetMask selected;
  int iterations = 0;
  bool converged = false;          // stopped at a fixed point before max_iters
  std::vector<double> objectives;  // f(S_i) - g(S_i) per iterate, S_0 = empty
};

/// Modular-Modular procedure for max f - g with modular g: replace f by its
/// permutation-based modular lower bound at the current iterate and take the
/// closed-form maximizer {a : gains[a] - g(a|empty) > 0}; stop at a fixed
/// point or after max_iters. Strict > keeps zero-gain elements out.
inline ModModResult modmod(const SetFunction& f, const SetFunction& g,
                           std::uint64_t seed, int max_iters = 100) {
  if (!f.props().submodular)
    throw std::invalid_argument("modmod: f must be declared submodular");
  if (!g.props().modular)
    throw std::invalid_argument("modmod: g must be declared modular");
  if (f.ground_size() != g.ground_size())
    throw std::invalid_argument("modmod: ground sets differ");
  if (max_iters < 1) throw std::invalid_argument("modmod: max_iters must be >= 1");

  const int n = f.ground_size();
  std::mt19937_64 rng(mix_seed(seed));

  // Singleton costs of the modular g, relative to g(empty).
  SubsetMask empty(n);
  const double g_empty = g(empty);
  std::vector<double> cost(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SubsetMask single(n);
    single.add(i);
    cost[static_cast<std::size_t>(i)] = g(single) - g_empty;
  }

  ModModResult result;
  result.selected = SubsetMask(n);
  result.objectives.push_back(f(empty) - g_empty);
  for (int it = 1; it <= max_iters; ++it) {
    const ModularLowerBound bound = modular_lower_bound(f, result.selected, rng);
    SubsetMask next(n);
    for (int i = 0; i < n; ++i)
      if (bound.gains[static_cast<std::size_t>(i)] - cost[static_cast<std::size_t>(i)] > 0.0)
        next.add(i);
    result.iterations = it;
    if (next == result.selected) {
      result.converged = true;
      break;
    }
    result.selected = std::move(next);
    result.objectives.push_back(f(result.selected) - g(result.selected));
  }
  return result;
}

}  // namespace submod
