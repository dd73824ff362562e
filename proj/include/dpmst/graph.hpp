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
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpmst/errors.hpp"

namespace dpmst {

using Vertex = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class NeighborRelation { L1, LInf };

inline std::string to_string(NeighborRelation r) {
  return r == NeighborRelation::L1 ? "l1" : "linf";
}

inline NeighborRelation parse_relation(const std::string& s) {
  if (s == "l1" || s == "L1") return NeighborRelation::L1;
  if (s == "linf" || s == "LINF" || s == "Linf") return NeighborRelation::LInf;
  throw ValidationError("unknown neighbor relation '" + s + "'");
}

// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when a and b were already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// The public topology: a simple, connected, undirected graph that is not a
// tree. Edge order is fixed at construction and defines the edge ids used
// everywhere else.
class Graph {
 public:
  static Graph build(std::size_t n, std::vector<Edge> edges) {
    require(n >= 2, "graph needs at least 2 vertices");
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& [u, v] : edges) {
      require(u < n && v < n, "edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") references a vertex outside [0," +
                                  std::to_string(n) + ")");
      require(u != v, "self-loop at vertex " + std::to_string(u));
      require(seen.emplace(std::min(u, v), std::max(u, v)).second,
              "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    DisjointSets ds(n);
    std::size_t components = n;
    for (const auto& e : edges) components -= ds.unite(e.u, e.v) ? 1 : 0;
    require(components == 1, "graph is disconnected");
    require(edges.size() >= n, "graph is a tree (m = n - 1); at least one cycle is required");
    return Graph(n, std::move(edges));
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}

  std::size_t n_;
  std::vector<Edge> edges_;
};

inline Graph build_graph(std::size_t n, std::vector<Edge> edges) {
  return Graph::build(n, std::move(edges));
}

// One finite real weight per edge id.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
    for (double x : w_) require(std::isfinite(x), "weights must be finite");
  }

  static WeightVector zeros(std::size_t m) { return WeightVector(std::vector<double>(m, 0.0)); }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](EdgeId e) const { return w_[e]; }
  std::span<const double> values() const noexcept { return w_; }

  void check_against(const Graph& g) const {
    require(w_.size() == g.num_edges(),
            "weight vector has " + std::to_string(w_.size()) + " entries, graph has " +
                std::to_string(g.num_edges()) + " edges");
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> w_;
};

// A spanning tree, identified with its sorted set of n-1 edge ids.
class SpanningTree {
 public:
  SpanningTree() = default;

  // Validates that `ids` is a spanning tree of g.
  static SpanningTree of(const Graph& g, std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    require(std::adjacent_find(ids.begin(), ids.end()) == ids.end(),
            "spanning tree lists an edge twice");
    require(ids.size() + 1 == g.num_vertices(), "spanning tree must have n-1 edges");
    DisjointSets ds(g.num_vertices());
    for (EdgeId e : ids) {
      require(e < g.num_edges(), "edge id " + std::to_string(e) + " out of range");
      require(ds.unite(g.edge(e).u, g.edge(e).v), "edge set contains a cycle");
    }
    return SpanningTree(std::move(ids));
  }

  // For ids already known to form a spanning tree; only sorts.
  static SpanningTree trusted(std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    return SpanningTree(std::move(ids));
  }

  std::span<const EdgeId> edges() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool contains(EdgeId e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
  friend auto operator<=>(const SpanningTree&, const SpanningTree&) = default;

 private:
  explicit SpanningTree(std::vector<EdgeId> ids) : ids_(std::move(ids)) {}
  std::vector<EdgeId> ids_;
};

// Edges of a that are not in b, ascending.
inline std::vector<EdgeId> tree_difference(const SpanningTree& a, const SpanningTree& b) {
  std::vector<EdgeId> out;
  std::set_difference(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                      std::back_inserter(out));
  return out;
}

// |T1 \ T2|, which equals |T2 \ T1| because both trees have n-1 edges.
inline std::size_t hamming_distance(const SpanningTree& t1, const SpanningTree& t2) {
  auto a = t1.edges().begin();
  auto b = t2.edges().begin();
  const auto ae = t1.edges().end();
  const auto be = t2.edges().end();
  std::size_t common = 0;
  while (a != ae && b != be) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  return t1.size() - common;
}

inline double tree_weight(const WeightVector& w, const SpanningTree& t) {
  double s = 0.0;
  for (EdgeId e : t.edges()) s += w[e];
  return s;
}

// 1_T: zero on the tree, one elsewhere.
inline WeightVector indicator_weights(const Graph& g, const SpanningTree& t) {
  std::vector<double> w(g.num_edges(), 1.0);
  for (EdgeId e : t.edges()) w[e] = 0.0;
  return WeightVector(std::move(w));
}

inline double l1_distance(const WeightVector& a, const WeightVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

inline double linf_distance(const WeightVector& a, const WeightVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace dpmst
