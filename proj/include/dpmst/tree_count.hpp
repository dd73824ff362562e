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
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/linalg.hpp"

namespace dpmst {

// Largest |T(G)| that the exhaustive routines agree to materialise.
inline constexpr std::uint64_t kEnumerationGuard = 1'000'000;

// Exact counts are attempted up to this many vertices.
inline constexpr std::size_t kExactCountMaxVertices = 16;

struct TreeCount {
  double log_count;                    // natural log of |T(G)|
  std::optional<std::uint64_t> exact;  // present when n <= 16
};

// Matrix-tree theorem on the Laplacian with the last row/column removed.
inline TreeCount count_spanning_trees(const Graph& g) {
  const std::size_t k = g.num_vertices() - 1;
  TreeCount out{0.0, std::nullopt};

  std::vector<double> lap(k * k, 0.0);
  for (const auto& [u, v] : g.edges()) {
    if (u < k) lap[u * k + u] += 1.0;
    if (v < k) lap[v * k + v] += 1.0;
    if (u < k && v < k) {
      lap[u * k + v] -= 1.0;
      lap[v * k + u] -= 1.0;
    }
  }
  if (g.num_vertices() <= kExactCountMaxVertices) {
    std::vector<std::int64_t> ilap(lap.size());
    std::transform(lap.begin(), lap.end(), ilap.begin(),
                   [](double x) { return static_cast<std::int64_t>(x); });
    if (auto det = exact_determinant(std::move(ilap), k); det && *det > 0) {
      out.exact = static_cast<std::uint64_t>(*det);
    }
  }
  const LogDet ld = log_determinant(lap, k);
  if (ld.sign <= 0) throw NumericsError("reduced Laplacian is not positive definite");
  out.log_count = out.exact ? std::log(static_cast<double>(*out.exact)) : ld.log_abs;
  return out;
}

inline void check_enumeration_guard(const Graph& g, std::uint64_t guard = kEnumerationGuard) {
  const TreeCount c = count_spanning_trees(g);
  const bool over = c.exact ? *c.exact > guard : c.log_count > std::log(static_cast<double>(guard));
  if (over) {
    throw GuardExceeded("graph has " +
                        (c.exact ? std::to_string(*c.exact)
                                 : "about e^" + std::to_string(c.log_count)) +
                        " spanning trees; enumeration guard is " + std::to_string(guard));
  }
}

namespace detail {

// Union-find without path compression so unions can be undone in LIFO order.
class RollbackSets {
 public:
  explicit RollbackSets(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }
  void undo() {
    const std::size_t b = history_.back();
    history_.pop_back();
    const std::size_t a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

}  // namespace detail

// Calls `visit` once per spanning tree, in lexicographic order of the sorted
// edge-id lists. Backtracks over edge inclusion; an exclusion is only taken
// when the chosen edges plus the undecided ones still connect the graph.
inline void for_each_spanning_tree(const Graph& g,
                                   const std::function<void(const SpanningTree&)>& visit) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  detail::RollbackSets ds(n);
  std::vector<EdgeId> chosen;
  chosen.reserve(n - 1);

  auto still_connectable = [&](std::size_t next) {
    DisjointSets probe(n);
    std::size_t comps = n;
    for (EdgeId e : chosen) comps -= probe.unite(g.edge(e).u, g.edge(e).v) ? 1 : 0;
    for (EdgeId e = next; e < m && comps > 1; ++e) {
      comps -= probe.unite(g.edge(e).u, g.edge(e).v) ? 1 : 0;
    }
    return comps == 1;
  };

  std::function<void(EdgeId)> rec = [&](EdgeId i) {
    if (chosen.size() + 1 == n) {
      visit(SpanningTree::trusted(chosen));
      return;
    }
    if (m - i < n - 1 - chosen.size()) return;
    if (ds.unite(g.edge(i).u, g.edge(i).v)) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
      ds.undo();
    }
    if (still_connectable(i + 1)) rec(i + 1);
  };
  rec(0);
}

inline std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g,
                                                          std::uint64_t guard = kEnumerationGuard) {
  check_enumeration_guard(g, guard);
  std::vector<SpanningTree> out;
  for_each_spanning_tree(g, [&](const SpanningTree& t) { out.push_back(t); });
  return out;
}

// Trees as edge bitsets, for fast pairwise Hamming scans.
class TreeBitsets {
 public:
  TreeBitsets(std::span<const SpanningTree> trees, std::size_t m)
      : words_((m + 63) / 64), bits_(trees.size() * words_, 0) {
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (EdgeId e : trees[i].edges()) bits_[i * words_ + e / 64] |= std::uint64_t{1} << (e % 64);
    }
    if (!trees.empty()) tree_size_ = trees[0].size();
  }

  std::size_t distance(std::size_t i, std::size_t j) const {
    std::size_t common = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      common += static_cast<std::size_t>(std::popcount(bits_[i * words_ + w] & bits_[j * words_ + w]));
    }
    return tree_size_ - common;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::size_t tree_size_ = 0;
};

// max over pairs of d_H, by exhaustive pairwise comparison.
inline std::size_t diameter_exact(const Graph& g, std::uint64_t guard = kEnumerationGuard) {
  const auto trees = enumerate_spanning_trees(g, guard);
  const TreeBitsets bits(trees, g.num_edges());
  const std::size_t cap = g.num_vertices() - 1;
  std::size_t best = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      best = std::max(best, bits.distance(i, j));
      if (best == cap) return best;
    }
  }
  return best;
}

}  // namespace dpmst
