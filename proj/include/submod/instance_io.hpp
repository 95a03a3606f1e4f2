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
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "submod/influence.hpp"
#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

using nlohmann::json;

/// A named pair of set functions over a shared ground set; what the CLI
/// subcommands operate on.
struct ProblemInstance {
  int n = 0;
  SetFunction f;
  SetFunction g;
};

inline json cascade_to_json(const CascadeInstance& inst) {
  json edges = json::array();
  for (const auto& [u, v] : inst.graph.edges) edges.push_back(json::array({u, v}));
  return json{{"graph", {{"n", inst.graph.n}, {"edges", std::move(edges)}}},
              {"weights", inst.weights},
              {"T", inst.samples},
              {"seed", inst.seed},
              {"costs", inst.costs},
              {"lambda", inst.lambda}};
}

/// Rebuilds an instance from its seed-based serialization; the live graphs
/// are resampled deterministically, so they are not stored.
inline CascadeInstance cascade_from_json(const json& j) {
  DirectedGraph graph;
  graph.n = j.at("graph").at("n").get<int>();
  for (const auto& e : j.at("graph").at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("cascade json: edge must be a [u, v] pair");
    graph.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return make_cascade_instance(std::move(graph),
                               j.at("weights").get<std::vector<double>>(),
                               j.at("T").get<int>(), j.at("seed").get<std::uint64_t>(),
                               j.at("costs").get<std::vector<double>>(),
                               j.at("lambda").get<double>());
}

/// Builds one of the built-in set-function families from its JSON spec.
/// Kinds: modular | coverage | sqrt-modular | concave-modular | facility.
inline SetFunction function_from_json(const json& spec, int n) {
  const std::string kind = spec.at("kind").get<std::string>();
  const double offset = spec.value("offset", 0.0);
  auto check_n = [n](const SetFunction& fn) {
    if (fn.ground_size() != n)
      throw std::invalid_argument("function spec does not match the instance ground set");
    return fn;
  };
  if (kind == "modular")
    return check_n(make_modular(spec.at("weights").get<std::vector<double>>(), offset));
  if (kind == "coverage") {
    auto fn = make_coverage(spec.at("covers").get<std::vector<std::vector<int>>>(),
                            spec.value("item_weights", std::vector<double>{}));
    return check_n(offset == 0.0 ? fn : shifted(fn, offset));
  }
  if (kind == "sqrt-modular")
    return check_n(make_sqrt_modular(spec.at("weights").get<std::vector<double>>(), offset));
  if (kind == "concave-modular") {
    const std::string phi = spec.at("phi").get<std::string>();
    auto weights = spec.at("weights").get<std::vector<double>>();
    if (phi == "sqrt") return check_n(make_sqrt_modular(std::move(weights), offset));
    if (phi == "log1p")
      return check_n(make_concave_modular(std::move(weights),
                                          [](double x) { return std::log1p(x); },
                                          "log1p", offset));
    if (phi == "pow") {
      const double p = spec.at("exponent").get<double>();
      if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("concave-modular: exponent must lie in (0,1]");
      return check_n(make_concave_modular(std::move(weights),
                                          [p](double x) { return std::pow(x, p); },
                                          "pow", offset));
    }
    throw std::invalid_argument("concave-modular: unknown phi '" + phi + "'");
  }
  if (kind == "facility")
    return check_n(make_facility_location(
        spec.at("utilities").get<std::vector<std::vector<double>>>()));
  throw std::invalid_argument("unknown function kind '" + kind + "'");
}

/// Parses an instance document: either {"n", "f", "g"} with function specs,
/// or {"imc": {...}} for a cascade instance (f = spread, g = cost).
inline ProblemInstance instance_from_json(const json& j) {
  ProblemInstance inst;
  if (j.contains("imc")) {
    CascadeInstance cascade = cascade_from_json(j.at("imc"));
    inst.n = cascade.graph.n;
    inst.f = make_spread_function(cascade);
    inst.g = make_cost_function(cascade.costs, cascade.lambda);
    return inst;
  }
  inst.n = j.at("n").get<int>();
  if (inst.n < 1) throw std::invalid_argument("instance: n must be >= 1");
  inst.f = function_from_json(j.at("f"), inst.n);
  inst.g = function_from_json(j.at("g"), inst.n);
  return inst;
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileParseError("cannot open instance: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FileParseError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

inline json mask_to_json(const SubsetMask& mask) {
  json out = json::array();
  mask.for_each([&](int i) { out.push_back(i); });
  return out;
}

}  // namespace submod
