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

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/linalg.hpp"
#include "dpmst/rng.hpp"
#include "dpmst/tree_count.hpp"

namespace dpmst {

// One parallel-edge record. Factors are held as logarithms so that very
// small multiplicative weights stay representable.
struct MultiEdge {
  Vertex u;
  Vertex v;
  double log_factor;
  EdgeId origin;

  double factor() const { return std::exp(log_factor); }
};

// Multigraph with positive edge factors: the intermediate state of the
// contraction/deletion sampler. Contraction keeps parallel edges and drops
// the self-loops it creates.
class MultiGraph {
 public:
  MultiGraph(std::size_t n, std::vector<MultiEdge> edges) : n_(n), edges_(std::move(edges)) {
    require(n >= 1, "multigraph needs a vertex");
    for (const auto& e : edges_) {
      require(e.u < n && e.v < n && e.u != e.v, "multigraph edge endpoints invalid");
      require(std::isfinite(e.log_factor), "multigraph factors must be positive and finite");
    }
  }

  static MultiGraph from_graph(const Graph& g, std::span<const double> log_factors) {
    require(log_factors.size() == g.num_edges(), "one factor per edge required");
    std::vector<MultiEdge> edges;
    edges.reserve(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      edges.push_back({g.edge(e).u, g.edge(e).v, log_factors[e], e});
    }
    return MultiGraph(g.num_vertices(), std::move(edges));
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::span<const MultiEdge> edges() const noexcept { return edges_; }

  // Merge the endpoints of edge `k`; the higher-numbered endpoint disappears
  // and vertices above it shift down by one.
  MultiGraph contract(std::size_t k) const {
    const Vertex keep = std::min(edges_[k].u, edges_[k].v);
    const Vertex gone = std::max(edges_[k].u, edges_[k].v);
    auto relabel = [&](Vertex x) { return x == gone ? keep : (x > gone ? x - 1 : x); };
    std::vector<MultiEdge> out;
    out.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i == k) continue;
      MultiEdge e = edges_[i];
      e.u = relabel(e.u);
      e.v = relabel(e.v);
      if (e.u != e.v) out.push_back(e);
    }
    return MultiGraph(n_ - 1, std::move(out), Trusted{});
  }

  MultiGraph remove(std::size_t k) const {
    std::vector<MultiEdge> out;
    out.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i != k) out.push_back(edges_[i]);
    }
    return MultiGraph(n_, std::move(out), Trusted{});
  }

  bool connected_without(std::size_t skip) const {
    DisjointSets ds(n_);
    std::size_t comps = n_;
    for (std::size_t i = 0; i < edges_.size() && comps > 1; ++i) {
      if (i != skip) comps -= ds.unite(edges_[i].u, edges_[i].v) ? 1 : 0;
    }
    return comps == 1;
  }

  bool is_connected() const { return connected_without(edges_.size()); }

  // Deleting a bridge disconnects the multigraph.
  bool is_bridge(std::size_t k) const { return !connected_without(k); }

 private:
  struct Trusted {};
  MultiGraph(std::size_t n, std::vector<MultiEdge> edges, Trusted)
      : n_(n), edges_(std::move(edges)) {}

  std::size_t n_;
  std::vector<MultiEdge> edges_;
};

// Relative factors below this are raised to it when the Laplacian is
// assembled, so an edge never vanishes from the matrix entirely.
inline constexpr double kMinRelativeFactor = 1e-300;

// log of sum over spanning trees of the product of edge factors: the
// log-determinant of the factor-weighted Laplacian with the last row and
// column removed. Factors are rescaled by their maximum first; a tree on V
// vertices has V-1 edges, so the scale comes back out as (V-1)*shift.
inline double tree_sum(const MultiGraph& m) {
  const std::size_t n = m.num_vertices();
  if (n == 1) return 0.0;
  const std::size_t k = n - 1;
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& e : m.edges()) shift = std::max(shift, e.log_factor);
  if (m.edges().empty()) throw NumericsError("tree sum of a disconnected multigraph");

  std::vector<double> lap(k * k, 0.0);
  for (const auto& e : m.edges()) {
    const double q = std::max(std::exp(e.log_factor - shift), kMinRelativeFactor);
    if (e.u < k) lap[e.u * k + e.u] += q;
    if (e.v < k) lap[e.v * k + e.v] += q;
    if (e.u < k && e.v < k) {
      lap[e.u * k + e.v] -= q;
      lap[e.v * k + e.u] -= q;
    }
  }
  const LogDet ld = log_determinant(lap, k);
  if (ld.sign <= 0) {
    throw NumericsError("reduced Laplacian is singular; the multigraph is disconnected");
  }
  return ld.log_abs + static_cast<double>(k) * shift;
}

// Marginal probability that edge k belongs to a factor-weighted random
// spanning tree: q_k * treesum(M / k) / treesum(M). `log_total` may pass a
// precomputed tree_sum(m).
inline double inclusion_probability(const MultiGraph& m, std::size_t k, double log_total) {
  const auto& e = m.edges()[k];
  return std::exp(e.log_factor + tree_sum(m.contract(k)) - log_total);
}

inline double inclusion_probability(const MultiGraph& m, std::size_t k) {
  return inclusion_probability(m, k, tree_sum(m));
}

// p outside [0, 1] by more than this is treated as a bug, not roundoff.
inline constexpr double kProbabilityTolerance = 1e-6;

struct TreeSample {
  SpanningTree tree;
  std::size_t clamp_events = 0;  // p fell outside [0,1] by roundoff
};

// Exact sampler: Pr[T] is proportional to prod_{e in T} exp(log_factors[e]).
// Edges are decided in ascending id. Each decision consumes exactly one
// uniform draw, forced decisions included, so m draws are used per sample.
// This version recomputes log tree sums of the contracted multigraph at
// every step; it is slow but works entirely in the log domain.
inline TreeSample sample_spanning_tree_reference(const Graph& g, std::span<const double> log_factors,
                                           Rng& rng) {
  MultiGraph cur = MultiGraph::from_graph(g, log_factors);
  double log_total = tree_sum(cur);
  std::vector<EdgeId> chosen;
  chosen.reserve(g.num_vertices() - 1);
  TreeSample out;

  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const double u = rng.uniform();
    // Records are kept in ascending origin order, and every lower origin has
    // been decided, so e is either at the front or was dropped as a loop.
    if (cur.edges().empty() || cur.edges().front().origin != e) continue;

    double p;
    MultiGraph contracted = cur.contract(0);
    double log_contracted = 0.0;
    if (cur.is_bridge(0)) {
      p = 1.0;
      log_contracted = log_total - cur.edges().front().log_factor;
    } else {
      log_contracted = tree_sum(contracted);
      p = std::exp(cur.edges().front().log_factor + log_contracted - log_total);
      if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
        throw NumericsError("inclusion probability " + std::to_string(p) + " for edge " +
                            std::to_string(e) + " is outside [0,1]");
      }
      if (p < 0.0 || p > 1.0) {
        p = std::clamp(p, 0.0, 1.0);
        ++out.clamp_events;
      }
    }

    if (u < p) {
      chosen.push_back(e);
      cur = std::move(contracted);
      log_total = log_contracted;
    } else {
      cur = cur.remove(0);
      log_total = tree_sum(cur);
    }
  }
  out.tree = SpanningTree::trusted(std::move(chosen));
  return out;
}

// Same law and same draw schedule as the reference sampler, but the
// inclusion probability q_e * treesum(M/e) / treesum(M) is read off as
// q_e * b^T G b, where G is the inverse of the reduced factor-weighted
// Laplacian (matrix determinant lemma). Contracting or deleting an edge is
// then a rank-one update of G instead of a fresh factorization. Vertex
// labels never change: a contracted edge becomes an infinite conductance.
//
// Construct once per (graph, factors); sample() may be called repeatedly.
class SpanningTreeSampler {
 public:
  SpanningTreeSampler(const Graph& g, std::span<const double> log_factors)
      : g_(g), k_(g.num_vertices() - 1), q_(g.num_edges()), g0_(k_ * k_, 0.0) {
    require(log_factors.size() == g.num_edges(), "one factor per edge required");
    double shift = -std::numeric_limits<double>::infinity();
    for (double x : log_factors) {
      require(std::isfinite(x), "multigraph factors must be positive and finite");
      shift = std::max(shift, x);
    }
    for (EdgeId e = 0; e < q_.size(); ++e) {
      q_[e] = std::max(std::exp(log_factors[e] - shift), kMinRelativeFactor);
      const auto [u, v] = g.edge(e);
      if (u < k_) g0_[u * k_ + u] += q_[e];
      if (v < k_) g0_[v * k_ + v] += q_[e];
      if (u < k_ && v < k_) {
        g0_[u * k_ + v] -= q_[e];
        g0_[v * k_ + u] -= q_[e];
      }
    }
    if (!spd_inverse(g0_, k_)) throw NumericsError("reduced Laplacian could not be inverted");
  }

  TreeSample sample(Rng& rng) const {
    const Graph& g = g_;
    const std::size_t n = g.num_vertices();
    const std::size_t m = g.num_edges();
    std::vector<double> G = g0_;
    std::vector<double> x(k_);
    DisjointSets merged(n);
    std::vector<EdgeId> chosen;
    chosen.reserve(n - 1);
    TreeSample out;

    for (EdgeId e = 0; e < m; ++e) {
      const double u = rng.uniform();
      const auto [a, b] = g.edge(e);
      if (merged.find(a) == merged.find(b)) continue;  // a loop after contraction
      const std::size_t needed = n - 1 - chosen.size();

      // Undecided edges number m - e; if that is exactly what is still
      // needed, each of them is forced (and none can be a loop).
      bool bridge = m - e == needed;
      double p = 1.0;
      double r = 0.0;
      if (!bridge) {
        for (std::size_t i = 0; i < k_; ++i) {
          x[i] = (a < k_ ? G[i * k_ + a] : 0.0) - (b < k_ ? G[i * k_ + b] : 0.0);
        }
        r = (a < k_ ? x[a] : 0.0) - (b < k_ ? x[b] : 0.0);
        p = q_[e] * r;
        if (!std::isfinite(p)) throw NumericsError("inclusion probability is not finite");
        // Bridges are settled combinatorially, never by roundoff.
        if (p > 0.5) bridge = is_bridge(chosen, e);
        if (bridge) {
          p = 1.0;
        } else if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
          throw NumericsError("inclusion probability " + std::to_string(p) + " for edge " +
                              std::to_string(e) + " is outside [0,1]");
        } else if (p < 0.0 || p > 1.0) {
          p = std::clamp(p, 0.0, 1.0);
          ++out.clamp_events;
        }
      }

      if (u < p) {
        chosen.push_back(e);
        merged.unite(a, b);
        // Contracting a bridge changes no other effective resistance.
        if (!bridge) rank_one(G, x, -1.0 / r);
      } else {
        rank_one(G, x, q_[e] / (1.0 - p));
      }
    }
    out.tree = SpanningTree::trusted(std::move(chosen));
    return out;
  }

 private:
  void rank_one(std::vector<double>& G, const std::vector<double>& x, double c) const {
    for (std::size_t i = 0; i < k_; ++i) {
      const double ci = c * x[i];
      if (ci == 0.0) continue;
      double* row = &G[i * k_];
      for (std::size_t j = 0; j < k_; ++j) row[j] += ci * x[j];
    }
  }

  // Whether dropping e disconnects chosen edges plus undecided edges > e.
  bool is_bridge(const std::vector<EdgeId>& chosen, EdgeId e) const {
    const Graph& g = g_;
    DisjointSets ds(g.num_vertices());
    std::size_t comps = g.num_vertices();
    for (EdgeId c : chosen) comps -= ds.unite(g.edge(c).u, g.edge(c).v) ? 1 : 0;
    for (EdgeId f = e + 1; f < g.num_edges() && comps > 1; ++f) {
      comps -= ds.unite(g.edge(f).u, g.edge(f).v) ? 1 : 0;
    }
    return comps > 1;
  }

  Graph g_;
  std::size_t k_;
  std::vector<double> q_;
  std::vector<double> g0_;
};

// Fast sampler with the reference sampler as a fallback when the matrix
// path hits a numerics problem. The fallback restarts from the same RNG
// state, so the draw schedule is unchanged.
inline TreeSample sample_spanning_tree_log(const Graph& g, std::span<const double> log_factors,
                                           Rng& rng) {
  const Rng saved = rng;
  try {
    return SpanningTreeSampler(g, log_factors).sample(rng);
  } catch (const NumericsError&) {
    rng = saved;
    return sample_spanning_tree_reference(g, log_factors, rng);
  }
}

inline TreeSample sample_spanning_tree(const Graph& g, std::span<const double> factors, Rng& rng) {
  std::vector<double> logs(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    require(factors[i] > 0 && std::isfinite(factors[i]), "edge factors must be positive and finite");
    logs[i] = std::log(factors[i]);
  }
  return sample_spanning_tree_log(g, logs, rng);
}

// Exact output law of the sampler, by enumeration.
struct TreeDistribution {
  std::vector<SpanningTree> trees;
  std::vector<double> probabilities;
};

inline TreeDistribution exact_tree_distribution(const Graph& g, std::span<const double> log_factors,
                                                std::uint64_t guard = kEnumerationGuard) {
  TreeDistribution d;
  d.trees = enumerate_spanning_trees(g, guard);
  d.probabilities.resize(d.trees.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.trees.size(); ++i) {
    double s = 0.0;
    for (EdgeId e : d.trees[i].edges()) s += log_factors[e];
    d.probabilities[i] = s;
    best = std::max(best, s);
  }
  double z = 0.0;
  for (double& p : d.probabilities) z += (p = std::exp(p - best));
  for (double& p : d.probabilities) p /= z;
  return d;
}

}  // namespace dpmst
