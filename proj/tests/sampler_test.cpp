// Copyright 2026 The dpmst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpmst/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "dpmst/generators.hpp"
#include "dpmst/rng.hpp"
#include "support/corpus.hpp"

namespace dpmst {
namespace {

using testing::corpus;
using testing::k4;
using testing::triangle;

std::vector<double> logs(std::initializer_list<double> q) {
  std::vector<double> out;
  for (double x : q) out.push_back(std::log(x));
  return out;
}

std::vector<double> random_logs(std::size_t m, Rng& rng, double spread) {
  std::vector<double> out(m);
  for (double& x : out) x = -spread * rng.uniform();
  return out;
}

// Brute-force weighted tree sum by enumeration, the independent oracle.
double brute_tree_sum(const Graph& g, const std::vector<double>& log_q) {
  double z = 0.0;
  for (const auto& t : enumerate_spanning_trees(g)) {
    double s = 0.0;
    for (EdgeId e : t.edges()) s += log_q[e];
    z += std::exp(s);
  }
  return std::log(z);
}

double tv_distance(const TreeDistribution& exact, const std::map<SpanningTree, std::size_t>& hits,
                   std::size_t samples) {
  double tv = 0.0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < exact.trees.size(); ++i) {
    const auto it = hits.find(exact.trees[i]);
    const double emp = it == hits.end() ? 0.0 : static_cast<double>(it->second) / samples;
    if (it != hits.end()) seen += it->second;
    tv += std::abs(emp - exact.probabilities[i]);
  }
  // Anything sampled outside the enumeration counts fully.
  tv += static_cast<double>(samples - seen) / samples;
  return tv / 2;
}

TEST(TreeSum, Examples) {
  const Graph t = triangle();
  EXPECT_NEAR(tree_sum(MultiGraph::from_graph(t, logs({1, 1, 1}))), std::log(3.0), 1e-12);
  EXPECT_NEAR(tree_sum(MultiGraph::from_graph(t, logs({2, 1, 1}))), std::log(5.0), 1e-12);

  // A path as a multigraph: a single spanning tree.
  const MultiGraph path(4, {{0, 1, std::log(2.0), 0}, {1, 2, std::log(3.0), 1}, {2, 3, std::log(0.5), 2}});
  EXPECT_NEAR(tree_sum(path), std::log(3.0), 1e-12);
}

TEST(TreeSum, ParallelEdgesAdd) {
  // Two parallel edges with factors 2 and 3 between two vertices.
  const MultiGraph pair(2, {{0, 1, std::log(2.0), 0}, {0, 1, std::log(3.0), 1}});
  EXPECT_NEAR(tree_sum(pair), std::log(5.0), 1e-12);
  // Contracting triangle edge 0 leaves edges 1 and 2 parallel.
  const MultiGraph c = MultiGraph::from_graph(triangle(), logs({2, 1, 1})).contract(0);
  EXPECT_EQ(c.num_vertices(), 2u);
  EXPECT_EQ(c.edges().size(), 2u);
  EXPECT_NEAR(tree_sum(c), std::log(2.0), 1e-12);
}

TEST(TreeSum, MatchesEnumerationOnCorpus) {
  Rng rng(3);
  for (const auto& [name, g] : corpus()) {
    const auto lq = random_logs(g.num_edges(), rng, 4.0);
    EXPECT_NEAR(tree_sum(MultiGraph::from_graph(g, lq)), brute_tree_sum(g, lq), 1e-9) << name;
  }
}

TEST(TreeSum, HugeAndTinyFactorsStayFinite) {
  const Graph g = k4();
  const std::vector<double> lq{-2000, -2000, -2000, -2000, -2000, -2000};
  EXPECT_NEAR(tree_sum(MultiGraph::from_graph(g, lq)), std::log(16.0) - 6000, 1e-9);
  const std::vector<double> hi{900, 900, 900, 900, 900, 900};
  EXPECT_NEAR(tree_sum(MultiGraph::from_graph(g, hi)), std::log(16.0) + 2700, 1e-9);
}

TEST(TreeSum, DisconnectedIsANumericsError) {
  const MultiGraph split(4, {{0, 1, 0.0, 0}, {2, 3, 0.0, 1}});
  EXPECT_THROW(tree_sum(split), NumericsError);
}

TEST(MultiGraph, RejectsBadRecords) {
  EXPECT_THROW(MultiGraph(2, {{0, 0, 0.0, 0}}), ValidationError);
  EXPECT_THROW(MultiGraph(2, {{0, 2, 0.0, 0}}), ValidationError);
  EXPECT_THROW(MultiGraph(2, {{0, 1, INFINITY, 0}}), ValidationError);
}

TEST(InclusionProbability, TriangleExample) {
  const MultiGraph m = MultiGraph::from_graph(triangle(), logs({2, 1, 1}));
  EXPECT_NEAR(inclusion_probability(m, 0), 0.8, 1e-12);
  EXPECT_NEAR(inclusion_probability(m, 1), 0.6, 1e-12);
  EXPECT_NEAR(inclusion_probability(m, 2), 0.6, 1e-12);
}

TEST(InclusionProbability, BridgeIsOne) {
  // Triangle plus a pendant edge: edge 3 is a bridge.
  const MultiGraph m(4, {{0, 1, 0.3, 0}, {1, 2, -1.0, 1}, {0, 2, 2.0, 2}, {2, 3, -7.0, 3}});
  EXPECT_TRUE(m.is_bridge(3));
  EXPECT_FALSE(m.is_bridge(0));
  EXPECT_NEAR(inclusion_probability(m, 3), 1.0, 1e-9);
}

TEST(InclusionProbability, ScaleInvariant) {
  Rng rng(17);
  for (const auto& [name, g] : corpus()) {
    const auto lq = random_logs(g.num_edges(), rng, 3.0);
    auto scaled = lq;
    for (double& x : scaled) x += std::log(7.5);
    const MultiGraph a = MultiGraph::from_graph(g, lq);
    const MultiGraph b = MultiGraph::from_graph(g, scaled);
    for (std::size_t k = 0; k < g.num_edges(); ++k) {
      EXPECT_NEAR(inclusion_probability(a, k), inclusion_probability(b, k), 1e-12) << name;
    }
  }
}

TEST(InclusionProbability, MarginalsSumToTreeSize) {
  Rng rng(8);
  for (const auto& [name, g] : corpus()) {
    const MultiGraph m = MultiGraph::from_graph(g, random_logs(g.num_edges(), rng, 2.0));
    double total = 0.0;
    for (std::size_t k = 0; k < g.num_edges(); ++k) total += inclusion_probability(m, k);
    EXPECT_NEAR(total, static_cast<double>(g.num_vertices() - 1), 1e-9) << name;
  }
}

TEST(ExactDistribution, TriangleExample) {
  const TreeDistribution d = exact_tree_distribution(triangle(), logs({2, 1, 1}));
  ASSERT_EQ(d.trees.size(), 3u);
  EXPECT_NEAR(d.probabilities[0], 0.4, 1e-15);
  EXPECT_NEAR(d.probabilities[1], 0.4, 1e-15);
  EXPECT_NEAR(d.probabilities[2], 0.2, 1e-15);
}

TEST(Sampler, TriangleFrequencies) {
  const Graph t = triangle();
  const auto lq = logs({2, 1, 1});
  const SpanningTreeSampler sampler(t, lq);
  Rng rng(2024);
  const std::size_t n = 200000;
  std::map<SpanningTree, std::size_t> hits;
  std::size_t with_e0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const SpanningTree tree = sampler.sample(rng).tree;
    ++hits[tree];
    with_e0 += tree.contains(0) ? 1 : 0;
  }
  // 5 standard errors on each binomial count.
  auto near = [&](double freq, double p) { EXPECT_NEAR(freq, p, 5 * std::sqrt(p * (1 - p) / n)); };
  near(static_cast<double>(hits[SpanningTree::of(t, {0, 1})]) / n, 0.4);
  near(static_cast<double>(hits[SpanningTree::of(t, {0, 2})]) / n, 0.4);
  near(static_cast<double>(hits[SpanningTree::of(t, {1, 2})]) / n, 0.2);
  near(static_cast<double>(with_e0) / n, 0.8);
}

TEST(Sampler, UniformTriangleIsSymmetric) {
  const SpanningTreeSampler sampler(triangle(), logs({1, 1, 1}));
  Rng rng(1);
  std::map<SpanningTree, std::size_t> hits;
  const std::size_t n = 90000;
  for (std::size_t i = 0; i < n; ++i) ++hits[sampler.sample(rng).tree];
  ASSERT_EQ(hits.size(), 3u);
  for (const auto& [tree, c] : hits) EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 3, 0.01);
}

TEST(Sampler, FastPathMatchesReferenceDrawForDraw) {
  Rng weights(99);
  for (const auto& [name, g] : corpus()) {
    const auto lq = random_logs(g.num_edges(), weights, 5.0);
    const SpanningTreeSampler fast(g, lq);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Rng a(seed), b(seed);
      const TreeSample x = fast.sample(a);
      const TreeSample y = sample_spanning_tree_reference(g, lq, b);
      EXPECT_EQ(x.tree, y.tree) << name << " seed " << seed;
      // Both consume exactly one draw per edge.
      EXPECT_EQ(a.next(), b.next()) << name;
    }
  }
}

TEST(Sampler, ConsumesOneDrawPerEdge) {
  const Graph g = grid_graph(3, 3);
  Rng a(5), b(5);
  (void)sample_spanning_tree_log(g, std::vector<double>(g.num_edges(), 0.0), a);
  for (std::size_t i = 0; i < g.num_edges(); ++i) b.next();
  EXPECT_EQ(a.next(), b.next());
}

TEST(Sampler, ReproducibleFromSeed) {
  const Graph g = clique_graph(6);
  Rng w(4);
  const auto lq = random_logs(g.num_edges(), w, 2.0);
  for (std::uint64_t seed : {0ull, 1ull, 77ull}) {
    Rng a(seed), b(seed);
    EXPECT_EQ(sample_spanning_tree_log(g, lq, a).tree, sample_spanning_tree_log(g, lq, b).tree);
  }
}

TEST(Sampler, TotalVariationOnSmallGraphs) {
  Rng weights(12);
  const std::size_t samples = 40000;
  for (const Graph& g : {k4(), clique_graph(5), grid_graph(3, 3), cycle_graph(12)}) {
    const auto lq = random_logs(g.num_edges(), weights, 2.0);
    const TreeDistribution exact = exact_tree_distribution(g, lq);
    const SpanningTreeSampler sampler(g, lq);
    Rng rng(g.num_edges());
    std::map<SpanningTree, std::size_t> hits;
    for (std::size_t i = 0; i < samples; ++i) ++hits[sampler.sample(rng).tree];
    // Expected TV at this sample size is below 0.04 even for 192 trees.
    EXPECT_LT(tv_distance(exact, hits, samples), 0.05) << g.num_edges();
  }
}

TEST(Sampler, ExtremeFactorsFallBackAndConcentrate) {
  // One tree has factor 1, the rest are ~e^-5000: all mass on that tree.
  const Graph g = k4();
  std::vector<double> lq(g.num_edges(), -5000.0);
  for (EdgeId e : {0u, 3u, 5u}) lq[e] = 0.0;
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const TreeSample s = sample_spanning_tree_log(g, lq, rng);
    EXPECT_EQ(s.tree, SpanningTree::of(g, {0, 3, 5}));
  }
}

TEST(Sampler, RejectsBadFactors) {
  Rng rng(0);
  const Graph t = triangle();
  EXPECT_THROW(sample_spanning_tree(t, std::vector<double>{1.0, 0.0, 1.0}, rng), ValidationError);
  EXPECT_THROW(sample_spanning_tree(t, std::vector<double>{1.0, 1.0}, rng), ValidationError);
}

TEST(Sampler, OutputIsAlwaysASpanningTree) {
  Rng rng(31);
  for (const auto& [name, g] : corpus()) {
    const auto lq = random_logs(g.num_edges(), rng, 30.0);
    for (int i = 0; i < 20; ++i) {
      const TreeSample s = sample_spanning_tree_log(g, lq, rng);
      EXPECT_NO_THROW(SpanningTree::of(g, std::vector<EdgeId>(s.tree.edges().begin(), s.tree.edges().end())))
          << name;
    }
  }
}

}  // namespace
}  // namespace dpmst
