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

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "gtest/gtest.h"
#include "submod/analysis.hpp"
#include "submod/influence.hpp"
#include "test_support.hpp"

namespace submod {
namespace {

using testsupport::for_all_masks;
using testsupport::transitive_closure;

DirectedGraph random_graph(std::mt19937_64& rng, int n, double p) {
  DirectedGraph g;
  g.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && canonical_unit(rng) < p) g.edges.emplace_back(u, v);
  return g;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    char name[] = "/tmp/submod_edges_XXXXXX";
    const int fd = mkstemp(name);
    if (fd < 0) throw std::runtime_error("mkstemp failed");
    path_ = name;
    std::ofstream out(path_);
    out << contents;
    close(fd);
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

TEST(SampleLiveGraphsTest, ZeroWeightsGiveEmptyGraphs) {
  DirectedGraph base;
  base.n = 4;
  base.edges = {{0, 1}, {1, 2}, {2, 3}};
  const auto live = sample_live_graphs(base, {0, 0, 0}, 5, 1);
  ASSERT_EQ(live.size(), 5u);
  for (const auto& g : live) EXPECT_TRUE(g.edges.empty());
}

TEST(SampleLiveGraphsTest, UnitWeightsKeepEverything) {
  DirectedGraph base;
  base.n = 4;
  base.edges = {{0, 1}, {1, 2}, {2, 3}};
  const auto live = sample_live_graphs(base, {1, 1, 1}, 3, 1);
  for (const auto& g : live) EXPECT_EQ(g.edges, base.edges);
}

TEST(SampleLiveGraphsTest, KeptFractionConcentratesAroundTheWeight) {
  DirectedGraph base;
  base.n = 40;
  for (int u = 0; u < 40; ++u)
    for (int v = 0; v < 40; ++v)
      if (u != v) base.edges.emplace_back(u, v);
  const std::vector<double> weights(base.edges.size(), 0.5);
  const int samples = 64;  // 64 * 1560 Bernoulli draws
  const auto live = sample_live_graphs(base, weights, samples, 9);
  std::size_t kept = 0;
  for (const auto& g : live) kept += g.edges.size();
  const double fraction =
      static_cast<double>(kept) / (static_cast<double>(samples) * base.edges.size());
  EXPECT_NEAR(fraction, 0.5, 0.02);
}

TEST(SampleLiveGraphsTest, DeterministicUnderSeed) {
  std::mt19937_64 rng(199);
  const DirectedGraph base = random_graph(rng, 12, 0.3);
  std::vector<double> weights(base.edges.size(), 0.4);
  const auto a = sample_live_graphs(base, weights, 4, 77);
  const auto b = sample_live_graphs(base, weights, 4, 77);
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_EQ(a[t].edges, b[t].edges);
  EXPECT_THROW(sample_live_graphs(base, weights, 0, 1), std::invalid_argument);
  EXPECT_THROW(sample_live_graphs(base, {0.5}, 2, 1), std::invalid_argument);
  EXPECT_THROW(sample_live_graphs(base, std::vector<double>(base.edges.size(), 1.5), 2, 1),
               std::invalid_argument);
}

TEST(SpreadTest, EmptySeedSetReachesNothing) {
  DirectedGraph g;
  g.n = 5;
  g.edges = {{0, 1}, {1, 2}};
  EXPECT_EQ(spread(SubsetMask(5), g), 0);
}

TEST(SpreadTest, StarCenterReachesEveryone) {
  DirectedGraph g;
  g.n = 7;
  for (int leaf = 1; leaf < 7; ++leaf) g.edges.emplace_back(0, leaf);
  EXPECT_EQ(spread(SubsetMask::of({0}, 7), g), 7);
  EXPECT_EQ(spread(SubsetMask::of({1}, 7), g), 1);  // leaves only reach themselves
}

TEST(SpreadTest, MatchesTransitiveClosureOnAllSubsets) {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(uniform_index(rng, 4));  // up to 8
    const DirectedGraph g = random_graph(rng, n, 0.25);
    const auto closure = transitive_closure(n, g.edges);
    for_all_masks(n, [&](const SubsetMask& seeds) {
      int expected = 0;
      for (int v = 0; v < n; ++v) {
        bool reached = false;
        seeds.for_each([&](int s) { reached = reached || closure[s][v]; });
        if (reached) ++expected;
      }
      ASSERT_EQ(spread(seeds, g), expected);
    });
  }
}

TEST(SpreadFunctionTest, AgreesExactlyWithBfsAverages) {
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + static_cast<int>(uniform_index(rng, 4));
    const DirectedGraph base = random_graph(rng, n, 0.3);
    std::vector<double> weights(base.edges.size());
    for (auto& w : weights) w = canonical_unit(rng);
    std::vector<double> costs(static_cast<std::size_t>(n), 0.5);
    const CascadeInstance inst =
        make_cascade_instance(base, weights, 6, trial, costs, 1.0);
    const SetFunction f = make_spread_function(inst);
    for_all_masks(n, [&](const SubsetMask& seeds) {
      long long total = 0;
      for (const auto& live : inst.live) total += spread(seeds, live);
      const double expected = static_cast<double>(total) / inst.samples;
      ASSERT_EQ(f(seeds), expected);  // identical arithmetic, bit-exact
    });
  }
}

TEST(SpreadFunctionTest, IsMonotoneSubmodularNormalized) {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 6 + static_cast<int>(uniform_index(rng, 5));  // up to 10
    const DirectedGraph base = random_graph(rng, n, 0.25);
    std::vector<double> weights(base.edges.size());
    for (auto& w : weights) w = 0.7 * canonical_unit(rng);
    const CascadeInstance inst = make_cascade_instance(
        base, weights, 5, 100 + trial, std::vector<double>(n, 1.0), 0.5);
    const SetFunction f = make_spread_function(inst);
    ASSERT_EQ(f(SubsetMask(n)), 0.0);
    ASSERT_TRUE(is_monotone_exhaustive(f, 0.0));    // integer-valued: exact
    ASSERT_TRUE(is_submodular_exhaustive(f, 0.0));
  }
}

TEST(CostFunctionTest, SpecifiedValuesAndModularity) {
  EXPECT_DOUBLE_EQ(make_cost_function({1, 2}, 0.0)(SubsetMask::of({0, 1}, 2)), 0.0);
  EXPECT_DOUBLE_EQ(make_cost_function({1, 2}, 3.0)(SubsetMask::of({0, 1}, 2)), 9.0);
  const SetFunction g = make_cost_function({0.5, 1.5, 2.0, 0.25, 1.0, 3.0}, 2.0);
  EXPECT_TRUE(g.props().modular);
  EXPECT_TRUE(g.props().normalized);
  // Modularity identity g(A u B) + g(A n B) = g(A) + g(B), exhaustively.
  for_all_masks(6, [&](const SubsetMask& a) {
    const SubsetMask b = SubsetMask::of({1, 3, 5}, 6);
    ASSERT_NEAR(g(a | b) + g(a & b), g(a) + g(b), 1e-12);
  });
  EXPECT_THROW(make_cost_function({-1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(make_cost_function({1.0}, -1.0), std::invalid_argument);
}

TEST(EdgeListTest, ParsesPairsPerLine) {
  const TempFile file("0 1\n1 2\n");
  const EdgeListGraph loaded = load_edge_list(file.path());
  EXPECT_EQ(loaded.graph.n, 3);
  EXPECT_EQ(loaded.graph.edges.size(), 2u);
  EXPECT_EQ(loaded.original_ids, (std::vector<long long>{0, 1, 2}));
}

TEST(EdgeListTest, UndirectedDoublesEdges) {
  const TempFile file("0 1\n1 2\n");
  const EdgeListGraph loaded = load_edge_list(file.path(), /*undirected=*/true);
  EXPECT_EQ(loaded.graph.edges.size(), 4u);
}

TEST(EdgeListTest, DuplicatesAreRemoved) {
  const TempFile file("3 4\n3 4\n4 3\n");
  const EdgeListGraph loaded = load_edge_list(file.path());
  EXPECT_EQ(loaded.graph.edges.size(), 2u);  // (3,4) once plus (4,3)
  EXPECT_EQ(loaded.graph.n, 2);
}

TEST(EdgeListTest, CommentsAndSparseIdsAreHandled) {
  const TempFile file("# a comment\n10 20\n\n20 7  # trailing comment\n");
  const EdgeListGraph loaded = load_edge_list(file.path());
  EXPECT_EQ(loaded.graph.n, 3);
  EXPECT_EQ(loaded.original_ids, (std::vector<long long>{7, 10, 20}));
  // Dense ids follow ascending original ids: 7 -> 0, 10 -> 1, 20 -> 2.
  EXPECT_EQ(loaded.graph.edges,
            (std::vector<std::pair<int, int>>{{1, 2}, {2, 0}}));
}

TEST(EdgeListTest, MalformedLinesReportTheLineNumber) {
  const TempFile file("0 1\n2\n");
  try {
    load_edge_list(file.path());
    FAIL() << "expected FileParseError";
  } catch (const FileParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
  }
  const TempFile negative("0 -1\n");
  EXPECT_THROW(load_edge_list(negative.path()), FileParseError);
  EXPECT_THROW(load_edge_list("/nonexistent/edges.txt"), FileParseError);
}

TEST(CascadeInstanceTest, ValidatesItsPieces) {
  DirectedGraph base;
  base.n = 3;
  base.edges = {{0, 1}, {0, 1}};  // duplicate
  EXPECT_THROW(make_cascade_instance(base, {0.5, 0.5}, 2, 1, {1, 1, 1}, 1.0),
               std::invalid_argument);
  base.edges = {{0, 1}};
  EXPECT_THROW(make_cascade_instance(base, {0.5}, 2, 1, {1, 1}, 1.0),
               std::invalid_argument);  // costs size mismatch
  EXPECT_THROW(make_cascade_instance(base, {0.5}, 2, 1, {1, 1, -1}, 1.0),
               std::invalid_argument);
  EXPECT_THROW(make_cascade_instance(base, {0.5}, 2, 1, {1, 1, 1}, -0.5),
               std::invalid_argument);
}

}  // namespace
}  // namespace submod
