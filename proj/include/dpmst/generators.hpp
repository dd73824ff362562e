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
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/rng.hpp"

namespace dpmst {

inline Graph cycle_graph(std::size_t n) {
  require(n >= 3, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return build_graph(n, std::move(edges));
}

// Edges in lexicographic order of (u, v), u < v.
inline Graph clique_graph(std::size_t n) {
  require(n >= 3, "clique needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return build_graph(n, std::move(edges));
}

// Vertices numbered row-major; each vertex contributes its right edge, then
// its down edge.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  require(rows >= 2 && cols >= 2, "grid needs at least 2 rows and 2 columns");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return build_graph(rows * cols, std::move(edges));
}

// Random recursive tree (vertex i hangs off a uniform earlier vertex) plus k
// distinct extra edges. With n-1+k edges the tree-space diameter is <= k.
inline Graph tree_plus_k(std::size_t n, std::size_t k, std::uint64_t seed) {
  require(n >= 3, "tree_plus_k needs at least 3 vertices");
  require(k >= 1, "tree_plus_k needs k >= 1");
  require(k <= n * (n - 1) / 2 - (n - 1), "k exceeds the number of non-tree vertex pairs");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> used;
  for (Vertex i = 1; i < n; ++i) {
    const Vertex j = rng.below(i);
    edges.push_back({j, i});
    used.emplace(j, i);
  }
  while (edges.size() < n - 1 + k) {
    Vertex u = rng.below(n);
    Vertex v = rng.below(n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (used.emplace(u, v).second) edges.push_back({u, v});
  }
  return build_graph(n, std::move(edges));
}

inline constexpr int kGnpRetries = 1000;

// G(n, p) conditioned on being connected and not a tree, by rejection.
inline Graph gnp_connected(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 3, "gnp_connected needs at least 3 vertices");
  require(p > 0 && p <= 1, "edge probability must lie in (0, 1]");
  Rng rng(seed);
  for (int attempt = 0; attempt < kGnpRetries; ++attempt) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng.uniform() < p) edges.push_back({u, v});
      }
    }
    if (edges.size() < n) continue;
    DisjointSets ds(n);
    std::size_t comps = n;
    for (const auto& e : edges) comps -= ds.unite(e.u, e.v) ? 1 : 0;
    if (comps == 1) return build_graph(n, std::move(edges));
  }
  throw ValidationError("gnp_connected: no connected non-tree sample in " +
                        std::to_string(kGnpRetries) + " attempts");
}

// Dispatch by family name; `params` holds the family's numeric arguments in
// order (cycle n | clique n | grid rows cols | tree_plus_k n k seed |
// gnp_connected n p seed).
inline Graph generate_graph(const std::string& family, const std::vector<double>& params) {
  auto count = [&](std::size_t want) {
    require(params.size() == want, family + " takes " + std::to_string(want) + " parameter(s)");
  };
  auto as_size = [&](std::size_t i) {
    const double x = params[i];
    require(x >= 0 && std::floor(x) == x && x < 1e15, family + ": parameter " +
                                                          std::to_string(i + 1) +
                                                          " must be a non-negative integer");
    return static_cast<std::size_t>(x);
  };
  if (family == "cycle") {
    count(1);
    return cycle_graph(as_size(0));
  }
  if (family == "clique") {
    count(1);
    return clique_graph(as_size(0));
  }
  if (family == "grid") {
    count(2);
    return grid_graph(as_size(0), as_size(1));
  }
  if (family == "tree_plus_k") {
    count(3);
    return tree_plus_k(as_size(0), as_size(1), as_size(2));
  }
  if (family == "gnp_connected") {
    count(3);
    return gnp_connected(as_size(0), params[1], as_size(2));
  }
  throw ValidationError("unknown graph family '" + family + "'");
}

}  // namespace dpmst
