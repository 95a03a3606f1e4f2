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
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace submod {

/// Analytic properties a two-variable objective declares about itself.
/// The greedy solver requires {quasiconvex, nondecreasing_first}; the
/// knapsack variant requires {nondecreasing_first, nonincreasing_second}.
struct CombinerProps {
  bool quasiconvex = false;
  bool nondecreasing_first = false;
  bool nonincreasing_second = false;
};

/// The two-variable objective Psi combining f- and g-values into a score.
/// Immutable value type; flags are declared, not verified.
class Combiner {
 public:
  /// Domain restriction on the second argument.
  enum class SecondArg { kAny, kNonNegative, kPositive };

  Combiner() = default;
  Combiner(std::string name, std::function<double(double, double)> fn,
           CombinerProps props, SecondArg domain = SecondArg::kAny)
      : name_(std::move(name)), fn_(std::move(fn)), props_(props), domain_(domain) {
    if (!fn_) throw std::invalid_argument("Combiner: null function");
  }

  const std::string& name() const { return name_; }
  const CombinerProps& props() const { return props_; }
  SecondArg second_arg_domain() const { return domain_; }

  double operator()(double a, double b) const {
    if (domain_ == SecondArg::kPositive && !(b > 0.0))
      throw std::domain_error("Combiner " + name_ + ": second argument must be > 0");
    if (domain_ == SecondArg::kNonNegative && !(b >= 0.0))
      throw std::domain_error("Combiner " + name_ + ": second argument must be >= 0");
    return fn_(a, b);
  }

 private:
  std::string name_;
  std::function<double(double, double)> fn_;
  CombinerProps props_;
  SecondArg domain_ = SecondArg::kAny;
};

inline Combiner difference_combiner() {
  return Combiner("diff", [](double a, double b) { return a - b; },
                  CombinerProps{true, true, true});
}

inline Combiner ratio_combiner() {
  return Combiner("ratio", [](double a, double b) { return a / b; },
                  CombinerProps{true, true, true}, Combiner::SecondArg::kPositive);
}

inline Combiner difference_sqrt_combiner() {
  return Combiner("diff-sqrt", [](double a, double b) { return a - std::sqrt(b); },
                  CombinerProps{true, true, true}, Combiner::SecondArg::kNonNegative);
}

inline Combiner ratio_sqrt_combiner() {
  return Combiner("ratio-sqrt", [](double a, double b) { return a / std::sqrt(b); },
                  CombinerProps{true, true, true}, Combiner::SecondArg::kPositive);
}

/// Lookup by CLI name: diff | ratio | diff-sqrt | ratio-sqrt.
inline Combiner combiner_from_name(const std::string& name) {
  if (name == "diff") return difference_combiner();
  if (name == "ratio") return ratio_combiner();
  if (name == "diff-sqrt") return difference_sqrt_combiner();
  if (name == "ratio-sqrt") return ratio_sqrt_combiner();
  throw std::invalid_argument("unknown combiner: " + name);
}

/// Samples Psi along the segment p0 -> p1 at grid+1 evenly spaced points and
/// checks Psi(point) <= max(Psi(p0), Psi(p1)). A necessary condition for
/// quasiconvexity, not a proof.
inline bool check_quasiconvex_on_segment(const Combiner& psi,
                                         std::pair<double, double> p0,
                                         std::pair<double, double> p1, int grid) {
  if (grid < 2) throw std::invalid_argument("check_quasiconvex_on_segment: grid >= 2");
  const double end_max = std::max(psi(p0.first, p0.second), psi(p1.first, p1.second));
  const double slack = 1e-12 * (1.0 + std::abs(end_max));
  for (int k = 0; k <= grid; ++k) {
    const double t = static_cast<double>(k) / grid;
    const double a = (1.0 - t) * p0.first + t * p1.first;
    const double b = (1.0 - t) * p0.second + t * p1.second;
    if (psi(a, b) > end_max + slack) return false;
  }
  return true;
}

}  // namespace submod
