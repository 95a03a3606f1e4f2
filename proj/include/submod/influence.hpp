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
#include <fstream>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "submod/random.hpp"
#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

/// Raised on malformed input files; carries the offending line number.
struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Removes duplicate edges, preserving first-occurrence order.
inline void dedup_edges(DirectedGraph& graph) {
  std::vector<std::pair<int, int>> seen = graph.edges;
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  if (seen.size() == graph.edges.size()) return;
  std::vector<std::pair<int, int>> kept;
  kept.reserve(seen.size());
  std::vector<std::pair<int, int>> pending = std::move(seen);
  for (const auto& e : graph.edges) {
    auto it = std::lower_bound(pending.begin(), pending.end(), e);
    if (it != pending.end() && *it == e) {
      kept.push_back(e);
      pending.erase(it);
    }
  }
  graph.edges = std::move(kept);
}

struct EdgeListGraph {
  DirectedGraph graph;
  std::vector<long long> original_ids;  // original id of dense vertex i
};

/// Loads a whitespace-separated "u v" edge list; '#' starts a comment and
/// blank lines are skipped. Vertex ids are arbitrary non-negative integers,
/// re-indexed densely (ascending id order); duplicates are removed; the
/// undirected flag adds the reverse of every edge.
inline EdgeListGraph load_edge_list(const std::string& path, bool undirected = false) {
  std::ifstream in(path);
  if (!in) throw FileParseError("cannot open edge list: " + path);
  std::vector<std::pair<long long, long long>> raw;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long u, v;
    if (!(fields >> u)) continue;  // blank or comment-only line
    std::string trailing;
    if (!(fields >> v) || (fields >> trailing)) {
      throw FileParseError(path + ":" + std::to_string(line_no) +
                           ": expected 'u v' pair");
    }
    if (u < 0 || v < 0)
      throw FileParseError(path + ":" + std::to_string(line_no) +
                           ": negative vertex id");
    raw.emplace_back(u, v);
    if (undirected) raw.emplace_back(v, u);
  }

  EdgeListGraph out;
  for (const auto& [u, v] : raw) {
    out.original_ids.push_back(u);
    out.original_ids.push_back(v);
  }
  std::sort(out.original_ids.begin(), out.original_ids.end());
  out.original_ids.erase(
      std::unique(out.original_ids.begin(), out.original_ids.end()),
      out.original_ids.end());
  auto dense = [&](long long id) {
    return static_cast<int>(std::lower_bound(out.original_ids.begin(),
                                             out.original_ids.end(), id) -
                            out.original_ids.begin());
  };
  out.graph.n = static_cast<int>(out.original_ids.size());
  out.graph.edges.reserve(raw.size());
  for (const auto& [u, v] : raw) out.graph.edges.emplace_back(dense(u), dense(v));
  dedup_edges(out.graph);
  return out;
}

/// Live-edge sampling of the independent cascade: each edge is kept
/// independently with its weight. Deterministic under the seed.
inline std::vector<DirectedGraph> sample_live_graphs(const DirectedGraph& base,
                                                     const std::vector<double>& weights,
                                                     int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sample_live_graphs: need samples >= 1");
  if (weights.size() != base.edges.size())
    throw std::invalid_argument("sample_live_graphs: one weight per edge required");
  for (double w : weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("sample_live_graphs: weights must lie in [0,1]");
  std::mt19937_64 rng(mix_seed(seed));
  std::vector<DirectedGraph> live(static_cast<std::size_t>(samples));
  for (auto& graph : live) {
    graph.n = base.n;
    for (std::size_t e = 0; e < base.edges.size(); ++e)
      if (canonical_unit(rng) < weights[e]) graph.edges.push_back(base.edges[e]);
  }
  return live;
}

namespace detail {

inline std::vector<std::vector<int>> adjacency(const DirectedGraph& graph) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.n));
  for (const auto& [u, v] : graph.edges) {
    if (u < 0 || u >= graph.n || v < 0 || v >= graph.n)
      throw std::invalid_argument("graph edge endpoint out of range");
    adj[static_cast<std::size_t>(u)].push_back(v);
  }
  return adj;
}

}  // namespace detail

/// Number of vertices reachable from the seed set along directed paths of
/// length >= 0 (seeds count themselves). Plain BFS; the reference
/// implementation the condensed evaluator is checked against.
inline int spread(const SubsetMask& seeds, const DirectedGraph& graph) {
  if (seeds.universe_size() != graph.n)
    throw std::invalid_argument("spread: seed universe does not match the graph");
  const auto adj = detail::adjacency(graph);
  std::vector<char> visited(static_cast<std::size_t>(graph.n), 0);
  std::queue<int> frontier;
  seeds.for_each([&](int s) {
    visited[static_cast<std::size_t>(s)] = 1;
    frontier.push(s);
  });
  int count = seeds.cardinality();
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!visited[static_cast<std::size_t>(v)]) {
        visited[static_cast<std::size_t>(v)] = 1;
        frontier.push(v);
        ++count;
      }
    }
  }
  return count;
}

/// T live-edge samples of a weighted directed graph plus per-vertex costs
/// and the cost scale; the raw material of one benchmark run.
struct CascadeInstance {
  DirectedGraph graph;
  std::vector<double> weights;  // per base edge, in [0,1]
  int samples = 0;              // T
  std::uint64_t seed = 0;
  std::vector<double> costs;    // per vertex, >= 0
  double lambda = 0.0;
  std::vector<DirectedGraph> live;
};

inline CascadeInstance make_cascade_instance(DirectedGraph graph,
                                             std::vector<double> weights, int samples,
                                             std::uint64_t seed,
                                             std::vector<double> costs, double lambda) {
  if (static_cast<int>(costs.size()) != graph.n)
    throw std::invalid_argument("cascade instance: one cost per vertex required");
  for (double c : costs)
    if (!(c >= 0.0)) throw std::invalid_argument("cascade instance: costs must be >= 0");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("cascade instance: lambda must be >= 0");
  {
    auto sorted = graph.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument(
          "cascade instance: duplicate edges (deduplicate before weighting)");
  }
  CascadeInstance inst;
  inst.live = sample_live_graphs(graph, weights, samples, seed);
  inst.graph = std::move(graph);
  inst.weights = std::move(weights);
  inst.samples = samples;
  inst.seed = seed;
  inst.costs = std::move(costs);
  inst.lambda = lambda;
  return inst;
}

/// g(S) = lambda * sum of costs over S; modular, normalized, monotone.
inline SetFunction make_cost_function(std::vector<double> costs, double lambda) {
  if (costs.empty()) throw std::invalid_argument("cost function: empty cost vector");
  for (double c : costs)
    if (!(c >= 0.0)) throw std::invalid_argument("cost function: costs must be >= 0");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("cost function: lambda must be >= 0");
  FunctionProps p;
  p.monotone = true;
  p.submodular = true;
  p.modular = true;
  p.normalized = true;
  int n = static_cast<int>(costs.size());
  return SetFunction("cost", n, p,
                     [c = std::move(costs), lambda](const SubsetMask& s) {
                       double v = 0.0;
                       s.for_each([&](int u) { v += c[u]; });
                       return lambda * v;
                     });
}

namespace detail {

// Reachability closure of one live graph: SCC condensation, then one
// reachable-vertex bitmask per component, filled in reverse topological
// order. Greedy issues Theta(n^2) spread queries, so evaluations must be a
// few word-ops per seed rather than a BFS.
struct ReachClosure {
  std::vector<int> component;      // vertex -> component id
  std::vector<SubsetMask> reach;   // component id -> reachable vertex set

  explicit ReachClosure(const DirectedGraph& graph) {
    const int n = graph.n;
    const auto adj = adjacency(graph);

    // Kosaraju, iterative: finish order on the forward graph...
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    {
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      std::vector<std::pair<int, std::size_t>> stack;
      for (int root = 0; root < n; ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        seen[static_cast<std::size_t>(root)] = 1;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
          auto& [u, next] = stack.back();
          const auto& out = adj[static_cast<std::size_t>(u)];
          if (next < out.size()) {
            const int v = out[next++];
            if (!seen[static_cast<std::size_t>(v)]) {
              seen[static_cast<std::size_t>(v)] = 1;
              stack.emplace_back(v, 0);
            }
          } else {
            order.push_back(u);
            stack.pop_back();
          }
        }
      }
    }

    // ...then assignment on the reverse graph in decreasing finish order.
    std::vector<std::vector<int>> radj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : graph.edges)
      radj[static_cast<std::size_t>(v)].push_back(u);
    component.assign(static_cast<std::size_t>(n), -1);
    int components = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (component[static_cast<std::size_t>(*it)] >= 0) continue;
      const int id = components++;
      std::vector<int> stack{*it};
      component[static_cast<std::size_t>(*it)] = id;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : radj[static_cast<std::size_t>(u)]) {
          if (component[static_cast<std::size_t>(v)] < 0) {
            component[static_cast<std::size_t>(v)] = id;
            stack.push_back(v);
          }
        }
      }
    }

    // Condensation DAG; Kosaraju emits components in topological order, so
    // successors can be folded in by walking ids backwards.
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(components));
    for (const auto& [u, v] : graph.edges) {
      const int cu = component[static_cast<std::size_t>(u)];
      const int cv = component[static_cast<std::size_t>(v)];
      if (cu != cv) succ[static_cast<std::size_t>(cu)].push_back(cv);
    }
    reach.assign(static_cast<std::size_t>(components), SubsetMask(n));
    for (int v = 0; v < n; ++v)
      reach[static_cast<std::size_t>(component[static_cast<std::size_t>(v)])].add(v);
    for (int c = components - 1; c >= 0; --c)
      for (int s : succ[static_cast<std::size_t>(c)])
        reach[static_cast<std::size_t>(c)] |= reach[static_cast<std::size_t>(s)];
  }

  int spread_of(const SubsetMask& seeds) const {
    if (reach.empty()) return 0;
    SubsetMask influenced(seeds.universe_size());
    seeds.for_each([&](int s) {
      influenced |= reach[static_cast<std::size_t>(component[static_cast<std::size_t>(s)])];
    });
    return influenced.cardinality();
  }
};

}  // namespace detail

/// f(S) = (1/T) * sum over live graphs of the spread of S. Monotone,
/// submodular, normalized. Backed by precomputed per-graph reachability
/// closures; agrees exactly with the BFS-based spread().
inline SetFunction make_spread_function(const CascadeInstance& instance) {
  std::vector<detail::ReachClosure> closures;
  closures.reserve(instance.live.size());
  for (const auto& graph : instance.live) closures.emplace_back(graph);
  FunctionProps p;
  p.monotone = true;
  p.submodular = true;
  p.normalized = true;
  const double samples = static_cast<double>(instance.samples);
  return SetFunction("spread", instance.graph.n, p,
                     [cl = std::move(closures), samples](const SubsetMask& s) {
                       long long total = 0;
                       for (const auto& closure : cl) total += closure.spread_of(s);
                       return static_cast<double>(total) / samples;
                     });
}

}  // namespace submod
