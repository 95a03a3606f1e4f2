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
#include <limits>
#include <stdexcept>
#include <vector>

#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

/// Curvature of a monotone submodular function:
///   c_f = 1 - min_i f(i | [n]\{i}) / f(i | empty),   in [0, 1].
/// Costs 2n+2 oracle calls (f(empty) and f([n]) are evaluated once).
///
/// Elements with f(i|empty) == 0 are inert when f(i|[n]\{i}) is also 0 and
/// are skipped; a zero base with a non-zero top marginal has no defined
/// ratio and is reported as a domain error.
inline double curvature(const SetFunction& f) {
  if (!f.props().monotone || !f.props().submodular)
    throw std::invalid_argument("curvature: requires a monotone submodular function");
  const int n = f.ground_size();
  const SubsetMask empty(n);
  const SubsetMask all = SubsetMask::full(n);
  const double f_empty = f(empty);
  const double f_full = f(all);
  double min_ratio = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < n; ++i) {
    SubsetMask single(n);
    single.add(i);
    SubsetMask without = all;
    without.remove(i);
    const double base = f(single) - f_empty;
    const double top = f_full - f(without);
    if (base == 0.0) {
      if (top == 0.0) continue;  // inert element
      throw std::domain_error("curvature: f(i|empty)=0 with f(i|[n]\\{i})!=0");
    }
    min_ratio = std::min(min_ratio, top / base);
    any = true;
  }
  if (!any) return 0.0;  // every element inert: f behaves modularly
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

namespace detail {

inline std::vector<double> tabulate_values(const SetFunction& f, int max_n) {
  const int n = f.ground_size();
  if (n > max_n)
    throw std::invalid_argument("exhaustive check: universe too large");
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < table.size(); ++bits)
    table[bits] = f(SubsetMask::from_bits(bits, n));
  return table;
}

}  // namespace detail

/// Checks f(A u B) + f(A n B) <= f(A) + f(B) over all pairs of subsets.
/// Exponential; intended for test universes (n <= 16).
inline bool is_submodular_exhaustive(const SetFunction& f, double tol = 1e-9) {
  const int n = f.ground_size();
  const auto table = detail::tabulate_values(f, 16);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = a + 1; b < count; ++b)
      if (table[a | b] + table[a & b] > table[a] + table[b] + tol) return false;
  return true;
}

/// Checks A subset of B => f(A) <= f(B), via single-element extensions
/// (equivalent by transitivity). Exponential; test universes only.
inline bool is_monotone_exhaustive(const SetFunction& f, double tol = 1e-9) {
  const int n = f.ground_size();
  const auto table = detail::tabulate_values(f, 16);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < count; ++a)
    for (int i = 0; i < n; ++i) {
      if ((a >> i) & 1u) continue;
      if (table[a | (std::uint64_t{1} << i)] < table[a] - tol) return false;
    }
  return true;
}

}  // namespace submod
