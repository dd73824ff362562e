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

#include "dpmst/mechanisms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "dpmst/audit.hpp"
#include "dpmst/generators.hpp"
#include "dpmst/tree_count.hpp"
#include "support/corpus.hpp"

namespace dpmst {
namespace {

using testing::corpus;
using testing::k4;
using testing::triangle;

TEST(MechanismConfig, RejectsBadEpsilon) {
  EXPECT_THROW((MechanismConfig{0.0, NeighborRelation::L1, 0}.validate()), ValidationError);
  EXPECT_THROW((MechanismConfig{-1.0, NeighborRelation::L1, 0}.validate()), ValidationError);
  EXPECT_THROW((MechanismConfig{INFINITY, NeighborRelation::L1, 0}.validate()), ValidationError);
  EXPECT_NO_THROW((MechanismConfig{1e-6, NeighborRelation::LInf, 0}.validate()));
}

TEST(Mechanism, NamesRoundTrip) {
  EXPECT_EQ(parse_mechanism(to_string(Mechanism::Laplace)), Mechanism::Laplace);
  EXPECT_EQ(parse_mechanism(to_string(Mechanism::Exponential)), Mechanism::Exponential);
  EXPECT_THROW(parse_mechanism("gauss"), ValidationError);
}

TEST(SampleLaplace, MomentsAndTail) {
  Rng rng(123);
  const std::size_t n = 1000000;
  const double b = 1.0;
  const double cut = b * std::log(10.0 / 0.1);
  double sum = 0.0, sq = 0.0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample_laplace(b, rng);
    sum += x;
    sq += x * x;
    inside += std::abs(x) <= cut ? 1 : 0;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.005);
  EXPECT_NEAR(sq / n - mean * mean, 2.0, 0.02);
  EXPECT_NEAR(static_cast<double>(inside) / n, 0.99, 0.002);
}

TEST(SampleLaplace, ScalesWithB) {
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) EXPECT_DOUBLE_EQ(sample_laplace(3.0, a), 3.0 * sample_laplace(1.0, b));
  EXPECT_THROW(sample_laplace(0.0, a), ValidationError);
}

TEST(LaplaceMechanism, Scale) {
  EXPECT_DOUBLE_EQ(laplace_scale(k4(), {1.0, NeighborRelation::L1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(laplace_scale(k4(), {1.0, NeighborRelation::LInf, 0}), 6.0);
  EXPECT_DOUBLE_EQ(laplace_scale(k4(), {0.5, NeighborRelation::L1, 0}), 2.0);
}

TEST(LaplaceMechanism, CycleOmitsOneEdge) {
  const Graph g = cycle_graph(9);
  const WeightVector w = WeightVector::zeros(9);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SpanningTree t = laplace_mechanism(g, w, {1.0, NeighborRelation::L1, seed});
    EXPECT_EQ(t.size(), 8u);
  }
}

TEST(LaplaceMechanism, DeterministicBySeed) {
  const Graph g = grid_graph(3, 4);
  Rng wr(1);
  std::vector<double> vals(g.num_edges());
  for (double& x : vals) x = wr.uniform();
  const WeightVector w(vals);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MechanismConfig cfg{0.7, NeighborRelation::LInf, seed};
    EXPECT_EQ(laplace_mechanism(g, w, cfg), laplace_mechanism(g, w, cfg));
  }
}

TEST(LaplaceMechanism, LargeEpsilonRecoversMst) {
  const Graph g = clique_graph(6);
  std::vector<double> vals(g.num_edges());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<double>((i * 7) % 15);
  const WeightVector w(vals);
  EXPECT_EQ(laplace_mechanism(g, w, {1e9, NeighborRelation::L1, 4}), mst(g, w));
}

TEST(ExponentialMechanism, Lambda) {
  EXPECT_DOUBLE_EQ(exponential_lambda(triangle(), {2.0, NeighborRelation::L1, 0}), 1.0);
  // The zero-weight MST of K4 in lexicographic edge order is the star at 0,
  // whose farthest tree is at distance 2.
  EXPECT_DOUBLE_EQ(exponential_lambda(k4(), {1.0, NeighborRelation::LInf, 0}), 1.0 / 8);
  // Listing a Hamiltonian path first makes it the reference tree; its
  // edge-disjoint complement is at distance 3.
  const Graph path_first = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {0, 3}, {1, 3}});
  EXPECT_DOUBLE_EQ(exponential_lambda(path_first, {1.0, NeighborRelation::LInf, 0}), 1.0 / 12);
  EXPECT_DOUBLE_EQ(exponential_lambda(cycle_graph(10), {1.0, NeighborRelation::LInf, 0}), 0.25);
}

TEST(ExponentialMechanism, TriangleDistribution) {
  const TreeDistribution d = exponential_distribution(triangle(), WeightVector({0, 0, 1}), 1.0);
  const double z = 1 + 2 * std::exp(-1.0);
  EXPECT_NEAR(d.probabilities[0], 1 / z, 1e-15);  // {e0,e1}
  EXPECT_NEAR(d.probabilities[1], std::exp(-1.0) / z, 1e-15);
  EXPECT_NEAR(d.probabilities[2], std::exp(-1.0) / z, 1e-15);
  EXPECT_NEAR(d.probabilities[0], 0.576, 5e-4);
  EXPECT_NEAR(d.probabilities[1], 0.212, 5e-4);
}

TEST(ExponentialMechanism, TriangleSampling) {
  const Graph t = triangle();
  const WeightVector w({0, 0, 1});
  Rng rng(77);
  const std::size_t n = 100000;
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    best += exponential_mechanism(t, w, {2.0, NeighborRelation::L1, 0}, rng) == SpanningTree::of(t, {0, 1});
  }
  const double p = 1 / (1 + 2 * std::exp(-1.0));
  EXPECT_NEAR(static_cast<double>(best) / n, p, 5 * std::sqrt(p * (1 - p) / n));
}

TEST(ExponentialMechanism, ShiftInvariance) {
  Rng rng(6);
  for (const auto& [name, g] : corpus()) {
    std::vector<double> vals(g.num_edges());
    for (double& x : vals) x = 3 * rng.uniform();
    std::vector<double> shifted = vals;
    for (double& x : shifted) x += 41.25;
    const auto a = exponential_distribution(g, WeightVector(vals), 0.8);
    const auto b = exponential_distribution(g, WeightVector(shifted), 0.8);
    ASSERT_EQ(a.trees, b.trees);
    for (std::size_t i = 0; i < a.trees.size(); ++i) {
      EXPECT_NEAR(a.probabilities[i], b.probabilities[i], 1e-12) << name;
    }
  }
}

TEST(ExponentialMechanism, UniformWeightsGiveUniformLaw) {
  const Graph g = clique_graph(5);
  const auto d = exponential_distribution(g, WeightVector(std::vector<double>(10, 2.5)), 3.0);
  ASSERT_EQ(d.trees.size(), 125u);
  for (double p : d.probabilities) EXPECT_NEAR(p, 1.0 / 125, 1e-15);
}

TEST(ExponentialMechanism, DeterministicBySeed) {
  const Graph g = grid_graph(3, 3);
  const WeightVector w = indicator_weights(g, reference_tree(g));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MechanismConfig cfg{1.0, NeighborRelation::L1, seed};
    EXPECT_EQ(exponential_mechanism(g, w, cfg), exponential_mechanism(g, w, cfg));
    EXPECT_EQ(release(Mechanism::Exponential, g, w, cfg), exponential_mechanism(g, w, cfg));
    EXPECT_EQ(release(Mechanism::Laplace, g, w, cfg), laplace_mechanism(g, w, cfg));
  }
}

TEST(ExponentialMechanism, HugeWeightsStaySampleable) {
  // lambda * w spans ~1e6, far outside exp range.
  const Graph g = k4();
  const WeightVector w({0, 1e6, 1e6, 0, 1e6, 0});
  EXPECT_EQ(exponential_mechanism(g, w, {2.0, NeighborRelation::L1, 1}), SpanningTree::of(g, {0, 3, 5}));
}

TEST(ReleaseError, Basics) {
  const Graph t = triangle();
  const WeightVector w({1, 2, 3});
  EXPECT_DOUBLE_EQ(release_error(t, w, SpanningTree::of(t, {0, 1})), 0.0);
  EXPECT_DOUBLE_EQ(release_error(t, w, SpanningTree::of(t, {1, 2})), 2.0);
}

TEST(Audit, Examples) {
  const Graph t = triangle();
  const WeightVector w({0.3, 1.1, 0.0});
  const AuditReport single = audit_exponential(t, w, 1.0, NeighborRelation::L1, {{1.0, 0.0, 0.0}});
  EXPECT_LE(single.max_ratio(), std::exp(1.0));
  EXPECT_TRUE(single.pass());

  const AuditReport zero = audit_exponential(t, w, 1.0, NeighborRelation::L1, {{0.0, 0.0, 0.0}});
  EXPECT_NEAR(zero.max_ratio(), 1.0, 1e-15);

  Rng rng(4);
  const auto dirs = audit_directions(3, NeighborRelation::L1, 60, rng);
  const AuditReport small = audit_exponential(t, w, 0.1, NeighborRelation::L1, dirs);
  EXPECT_EQ(small.directions, 60u);
  EXPECT_LE(small.max_ratio(), std::exp(0.1) * (1 + 1e-9));
}

TEST(Audit, DirectionsHaveUnitNorm) {
  Rng rng(2);
  for (NeighborRelation rel : {NeighborRelation::L1, NeighborRelation::LInf}) {
    const auto dirs = audit_directions(7, rel, 80, rng);
    ASSERT_EQ(dirs.size(), 80u);
    for (const auto& d : dirs) {
      double l1 = 0, linf = 0;
      for (double x : d) l1 += std::abs(x), linf = std::max(linf, std::abs(x));
      EXPECT_NEAR(rel == NeighborRelation::L1 ? l1 : linf, 1.0, 1e-12);
    }
    // Single-edge extremes come first.
    EXPECT_EQ(dirs[rel == NeighborRelation::L1 ? 0 : 2][0], 1.0);
  }
}

TEST(Audit, NoViolationsOnCorpus) {
  Rng rng(10);
  for (const auto& [name, g] : corpus()) {
    std::vector<double> vals(g.num_edges());
    for (double& x : vals) x = rng.uniform();
    const WeightVector w(vals);
    for (NeighborRelation rel : {NeighborRelation::L1, NeighborRelation::LInf}) {
      const auto dirs = audit_directions(g.num_edges(), rel, 50, rng);
      for (double eps : {0.1, 0.5, 1.0, 2.0}) {
        EXPECT_TRUE(audit_exponential(g, w, eps, rel, dirs).pass()) << name << ' ' << eps;
        EXPECT_TRUE(audit_laplace(g, eps, rel, dirs).pass()) << name << ' ' << eps;
      }
    }
  }
}

TEST(Audit, DetectsAnUnderCalibratedMechanism) {
  // Auditing at half the budget the mechanism was tuned for must fail on a
  // graph where the bound is tight: under l1, lambda = eps/2 and a unit
  // shift on one edge moves some tree's log-probability by about eps/2 on
  // each side of the normalizer.
  const Graph g = clique_graph(5);
  std::vector<double> dir(g.num_edges(), 0.0);
  dir[0] = 1.0;
  const WeightVector w = WeightVector::zeros(g.num_edges());
  const AuditReport r = audit_exponential(g, w, 1.0, NeighborRelation::L1, {dir});
  EXPECT_GT(r.max_log_ratio, 0.25);
  AuditReport tighter = r;
  tighter.epsilon = r.max_log_ratio / 2;
  EXPECT_FALSE(tighter.pass());
}

}  // namespace
}  // namespace dpmst
