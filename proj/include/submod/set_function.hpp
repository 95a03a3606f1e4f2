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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "submod/subset.hpp"

namespace submod {

/// Structural properties a set function declares about itself. Flags are
/// caller-declared and trusted by the algorithms; the exhaustive checkers in
/// analysis.hpp verify them on small universes.
struct FunctionProps {
  bool monotone = false;
  bool submodular = false;
  bool modular = false;
  bool normalized = false;  // f(empty) == 0
  bool positive = false;    // f(S) > 0 for all S

  bool operator==(const FunctionProps&) const = default;
};

/// Evaluation oracle for a set function over a fixed ground set.
///
/// A SetFunction is an immutable value: copies share the underlying oracle
/// and the call counter. Wrappers built by shifted()/scaled() also share the
/// base counter, so query-complexity measurements see through them. Every
/// call of operator() increments the counter by exactly one.
class SetFunction {
 public:
  using Oracle = std::function<double(const SubsetMask&)>;

  SetFunction() = default;

  SetFunction(std::string name, int ground_size, FunctionProps props, Oracle oracle)
      : core_(std::make_shared<Core>(
            Core{std::move(name), ground_size, props, std::move(oracle)})),
        calls_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (ground_size < 1)
      throw std::invalid_argument("SetFunction: ground size must be >= 1");
    if (!core_->oracle) throw std::invalid_argument("SetFunction: null oracle");
  }

  bool valid() const { return core_ != nullptr; }
  const std::string& name() const { return core_->name; }
  int ground_size() const { return core_->n; }
  const FunctionProps& props() const { return core_->props; }

  double operator()(const SubsetMask& s) const {
    if (s.universe_size() != core_->n)
      throw std::invalid_argument("SetFunction: mask universe mismatch");
    calls_->fetch_add(1, std::memory_order_relaxed);
    return core_->oracle(s);
  }

  std::uint64_t eval_count() const {
    return calls_->load(std::memory_order_relaxed);
  }

  /// Wrapper sharing this function's oracle without counting; used only by
  /// the wrapper builders below so a wrapped evaluation counts once.
  const Oracle& raw_oracle() const { return core_->oracle; }
  const std::shared_ptr<std::atomic<std::uint64_t>>& counter() const { return calls_; }

 private:
  struct Core {
    std::string name;
    int n = 0;
    FunctionProps props;
    Oracle oracle;
  };

  SetFunction(std::shared_ptr<Core> core, std::shared_ptr<std::atomic<std::uint64_t>> calls)
      : core_(std::move(core)), calls_(std::move(calls)) {}

  friend SetFunction shifted(const SetFunction&, double);
  friend SetFunction scaled(const SetFunction&, double);

  std::shared_ptr<const Core> core_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

/// g + c. Keeps {monotone, submodular, modular}; drops normalized; positive
/// iff min g + c > 0 (min g = g(empty) for monotone g, unknown otherwise).
inline SetFunction shifted(const SetFunction& base, double c) {
  FunctionProps p = base.props();
  p.normalized = false;
  if (p.monotone) {
    SubsetMask empty(base.ground_size());
    p.positive = base.raw_oracle()(empty) + c > 0.0;
  } else {
    p.positive = false;
  }
  auto raw = base.raw_oracle();
  auto core = std::make_shared<SetFunction::Core>(SetFunction::Core{
      base.name() + "+" + std::to_string(c), base.ground_size(), p,
      [raw, c](const SubsetMask& s) { return raw(s) + c; }});
  return SetFunction(std::move(core), base.counter());
}

/// lambda * g for lambda >= 0. Keeps {monotone, submodular, modular} and
/// normalized; positive iff lambda > 0 and g positive.
inline SetFunction scaled(const SetFunction& base, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("scaled: factor must be >= 0");
  FunctionProps p = base.props();
  p.positive = p.positive && lambda > 0.0;
  if (lambda == 0.0) p.modular = true;
  auto raw = base.raw_oracle();
  auto core = std::make_shared<SetFunction::Core>(SetFunction::Core{
      std::to_string(lambda) + "*" + base.name(), base.ground_size(), p,
      [raw, lambda](const SubsetMask& s) { return lambda * raw(s); }});
  return SetFunction(std::move(core), base.counter());
}

/// f(i|A) = f(A u {i}) - f(A), two oracle calls.
inline double marginal_gain(const SetFunction& f, int i, const SubsetMask& a) {
  if (i < 0 || i >= f.ground_size())
    throw std::out_of_range("marginal_gain: element out of range");
  if (a.contains(i))
    throw std::invalid_argument("marginal_gain: element already in the set");
  SubsetMask with = a;
  with.add(i);
  return f(with) - f(a);
}

// ---------------------------------------------------------------------------
// Built-in function families. Each builder validates its parameters and
// declares the correct property flags.
// ---------------------------------------------------------------------------

/// f(S) = offset + sum of weights over S. Weights must be non-negative.
inline SetFunction make_modular(std::vector<double> weights, double offset = 0.0) {
  if (weights.empty()) throw std::invalid_argument("modular: empty weight vector");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("modular: weights must be >= 0");
  FunctionProps p;
  p.monotone = true;
  p.submodular = true;
  p.modular = true;
  p.normalized = offset == 0.0;
  p.positive = offset > 0.0;
  int n = static_cast<int>(weights.size());
  return SetFunction(
      "modular", n, p,
      [w = std::move(weights), offset](const SubsetMask& s) {
        double v = offset;
        s.for_each([&](int i) { v += w[i]; });
        return v;
      });
}

/// Weighted coverage: element i covers the item set covers[i] over items
/// 0..m-1; f(S) = total weight of items covered by S. Unit weights when
/// item_weights is empty.
inline SetFunction make_coverage(std::vector<std::vector<int>> covers,
                                 std::vector<double> item_weights = {}) {
  if (covers.empty()) throw std::invalid_argument("coverage: no elements");
  int m = static_cast<int>(item_weights.size());
  for (const auto& c : covers)
    for (int item : c) {
      if (item < 0) throw std::invalid_argument("coverage: negative item id");
      if (item >= m) m = item + 1;
    }
  if (item_weights.empty()) {
    item_weights.assign(static_cast<std::size_t>(m), 1.0);
  } else {
    for (double w : item_weights)
      if (!(w >= 0.0)) throw std::invalid_argument("coverage: item weights must be >= 0");
  }
  int n = static_cast<int>(covers.size());
  // Per-element item bitmask; evaluation is a union plus a weighted popcount.
  std::vector<SubsetMask> item_masks;
  item_masks.reserve(covers.size());
  int universe = m > 0 ? m : 1;
  for (const auto& c : covers) {
    SubsetMask mask(universe);
    for (int item : c) mask.add(item);
    item_masks.push_back(std::move(mask));
  }
  FunctionProps p;
  p.monotone = true;
  p.submodular = true;
  p.normalized = true;
  return SetFunction(
      "coverage", n, p,
      [masks = std::move(item_masks), w = std::move(item_weights),
       universe](const SubsetMask& s) {
        SubsetMask covered(universe);
        s.for_each([&](int i) { covered |= masks[i]; });
        double v = 0.0;
        covered.for_each([&](int item) { v += w[item]; });
        return v;
      });
}

/// phi(offset_free modular sum) + offset for a non-decreasing concave phi.
/// Monotone submodular for non-negative weights; normalized iff
/// phi(0) + offset == 0.
inline SetFunction make_concave_modular(std::vector<double> weights,
                                        std::function<double(double)> phi,
                                        const std::string& phi_name,
                                        double offset = 0.0) {
  if (weights.empty()) throw std::invalid_argument("concave-modular: empty weights");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("concave-modular: weights must be >= 0");
  if (!phi) throw std::invalid_argument("concave-modular: null phi");
  double at_zero = phi(0.0) + offset;
  FunctionProps p;
  p.monotone = true;
  p.submodular = true;
  p.normalized = at_zero == 0.0;
  p.positive = at_zero > 0.0;
  int n = static_cast<int>(weights.size());
  return SetFunction(
      "concave-modular(" + phi_name + ")", n, p,
      [w = std::move(weights), phi = std::move(phi), offset](const SubsetMask& s) {
        double sum = 0.0;
        s.for_each([&](int i) { sum += w[i]; });
        return phi(sum) + offset;
      });
}

/// sqrt of a non-negative modular function.
inline SetFunction make_sqrt_modular(std::vector<double> weights, double offset = 0.0) {
  return make_concave_modular(std::move(weights),
                              [](double x) { return std::sqrt(x); }, "sqrt", offset);
}

/// Facility location: f(S) = sum over columns j of max_{i in S} utility[i][j],
/// zero on the empty set. Utilities must be non-negative and rectangular.
inline SetFunction make_facility_location(std::vector<std::vector<double>> utility) {
  if (utility.empty()) throw std::invalid_argument("facility: no elements");
  std::size_t m = utility.front().size();
  for (const auto& row : utility) {
    if (row.size() != m) throw std::invalid_argument("facility: ragged utility matrix");
    for (double u : row)
      if (!(u >= 0.0)) throw std::invalid_argument("facility: utilities must be >= 0");
  }
  FunctionProps p;
  p.monotone = true;
  p.submodular = true;
  p.normalized = true;
  int n = static_cast<int>(utility.size());
  return SetFunction(
      "facility-location", n, p,
      [u = std::move(utility), m](const SubsetMask& s) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          double best = 0.0;
          s.for_each([&](int i) { best = std::max(best, u[i][j]); });
          v += best;
        }
        return v;
      });
}

}  // namespace submod
