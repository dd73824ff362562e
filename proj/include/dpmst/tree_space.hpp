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
#include <string>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/mst.hpp"
#include "dpmst/tree_count.hpp"

namespace dpmst {

// ---------------------------------------------------------------------------
// Exchange surgery
// ---------------------------------------------------------------------------

struct Exchange {
  EdgeId removed;
  SpanningTree tree;
};

namespace detail {

// Edge ids on the unique path between s and t inside tree `t`.
inline std::vector<EdgeId> tree_path(const Graph& g, const SpanningTree& tree, Vertex s, Vertex t) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(n);
  for (EdgeId e : tree.edges()) {
    adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
    adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
  }
  constexpr EdgeId kNone = static_cast<EdgeId>(-1);
  std::vector<EdgeId> via(n, kNone);
  std::vector<Vertex> prev(n, n);
  std::vector<Vertex> stack{s};
  prev[s] = s;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    if (x == t) break;
    for (const auto& [y, e] : adj[x]) {
      if (prev[y] == n) {
        prev[y] = x;
        via[y] = e;
        stack.push_back(y);
      }
    }
  }
  std::vector<EdgeId> path;
  for (Vertex x = t; x != s; x = prev[x]) path.push_back(via[x]);
  return path;
}

}  // namespace detail

// Adds e (from ty \ tx) to tx and removes the lowest-id edge f of the
// fundamental cycle that is not in ty. The result is a spanning tree one
// step closer to ty.
inline Exchange exchange_step(const Graph& g, const SpanningTree& tx, const SpanningTree& ty,
                              EdgeId e) {
  require(ty.contains(e) && !tx.contains(e), "exchange edge must lie in Ty \\ Tx");
  const auto cycle = detail::tree_path(g, tx, g.edge(e).u, g.edge(e).v);
  EdgeId f = static_cast<EdgeId>(-1);
  for (EdgeId c : cycle) {
    if (!ty.contains(c)) f = std::min(f, c);
  }
  // ty is acyclic, so the cycle through e has an edge outside ty.
  if (f == static_cast<EdgeId>(-1)) throw NumericsError("exchange found no removable edge");
  std::vector<EdgeId> ids;
  ids.reserve(tx.size());
  for (EdgeId x : tx.edges()) {
    if (x != f) ids.push_back(x);
  }
  ids.push_back(e);
  return {f, SpanningTree::trusted(std::move(ids))};
}

// Tree T_Q with T_Q \ ta == Q and |tb \ T_Q| == |tb \ ta| - |Q|. Q is
// applied one edge at a time in ascending id order.
inline SpanningTree iterated_exchange(const Graph& g, const SpanningTree& ta,
                                      const SpanningTree& tb, std::vector<EdgeId> q) {
  std::sort(q.begin(), q.end());
  require(std::adjacent_find(q.begin(), q.end()) == q.end(), "Q lists an edge twice");
  for (EdgeId e : q) require(tb.contains(e) && !ta.contains(e), "Q must be a subset of Tb \\ Ta");
  SpanningTree t = ta;
  for (EdgeId e : q) t = exchange_step(g, t, tb, e).tree;
  return t;
}

// ---------------------------------------------------------------------------
// Binary codes
// ---------------------------------------------------------------------------

// Words are stored as integers; position i of a word (0-based, left to
// right in the text form) is bit (length - 1 - i), so ascending integer
// order is lexicographic order of the text form.
struct CodeBook {
  std::size_t length = 0;
  std::vector<std::uint64_t> words;
  std::size_t min_distance = 0;

  bool bit(std::size_t word, std::size_t position) const {
    return (words[word] >> (length - 1 - position)) & 1U;
  }

  // Pairwise scan; true when every two words differ in >= min_distance places.
  bool verify() const {
    if (words.empty()) return false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        if (static_cast<std::size_t>(std::popcount(words[i] ^ words[j])) < min_distance) return false;
      }
    }
    return true;
  }
};

namespace detail {

// Lexicographic greedy (Gilbert-Varshamov) scan at `length`, stopping once
// `target` words are kept.
inline std::vector<std::uint64_t> greedy_code(std::size_t length, std::size_t distance,
                                              std::uint64_t target) {
  std::vector<std::uint64_t> kept;
  const std::uint64_t end = length == 64 ? 0 : (std::uint64_t{1} << length);
  std::uint64_t x = 0;
  do {
    bool ok = true;
    for (std::uint64_t y : kept) {
      if (static_cast<std::size_t>(std::popcount(x ^ y)) < distance) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back(x);
      if (kept.size() >= target) break;
    }
    ++x;
  } while (x != end);
  return kept;
}

}  // namespace detail

// Code with >= 2^floor(n/3) words and minimum distance floor(n/6)+1.
// Built greedily at length 6*floor(n/6) and zero-padded on the right; for
// n in {3,4,5} that length is 0 and cannot hold two words, so the greedy
// scan then runs at the full length instead.
inline CodeBook gv_code(std::size_t n) {
  require(n >= 1, "code length must be at least 1");
  require(n <= 63, "code length above 63 is not supported");
  const std::size_t distance = n / 6 + 1;
  const std::uint64_t target = std::uint64_t{1} << (n / 3);

  std::size_t base = 6 * (n / 6);
  auto words = detail::greedy_code(base, distance, target);
  if (words.size() < target) {
    base = n;
    words = detail::greedy_code(base, distance, target);
  }
  for (auto& w : words) w <<= (n - base);
  return CodeBook{n, std::move(words), distance};
}

// ---------------------------------------------------------------------------
// Dissimilar tree sets
// ---------------------------------------------------------------------------

struct DissimilarSet {
  std::vector<SpanningTree> trees;
  double separation = 0.0;  // every pair has d_H strictly above this

  bool verify() const {
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (std::size_t j = i + 1; j < trees.size(); ++j) {
        if (!(static_cast<double>(hamming_distance(trees[i], trees[j])) > separation)) return false;
      }
    }
    return true;
  }
};

// Maps each code word x to T_{Q_x}, where Q_x selects the edges of tb \ ta
// (ascending id) at the positions where x has a one. A code with minimum
// distance d+1 yields pairwise distances above d/2.
inline DissimilarSet embed_code(const Graph& g, const SpanningTree& ta, const SpanningTree& tb,
                                const CodeBook& code) {
  const auto diff = tree_difference(tb, ta);
  require(diff.size() == code.length, "code length " + std::to_string(code.length) +
                                          " differs from d_H(Ta, Tb) = " +
                                          std::to_string(diff.size()));
  DissimilarSet out;
  out.separation = code.min_distance == 0 ? 0.0 : (static_cast<double>(code.min_distance) - 1) / 2;
  out.trees.reserve(code.words.size());
  for (std::size_t w = 0; w < code.words.size(); ++w) {
    std::vector<EdgeId> q;
    for (std::size_t i = 0; i < code.length; ++i) {
      if (code.bit(w, i)) q.push_back(diff[i]);
    }
    out.trees.push_back(iterated_exchange(g, ta, tb, std::move(q)));
  }
  return out;
}

// Greedy packing: take the lexicographically first remaining tree, drop
// every tree within closed distance d of it, repeat.
inline DissimilarSet greedy_packing(std::vector<SpanningTree> trees, double d) {
  require(d > 0, "packing radius must be positive");
  std::sort(trees.begin(), trees.end());
  std::size_t m = 0;
  for (const auto& t : trees) {
    if (t.size() > 0) m = std::max(m, t.edges().back() + 1);
  }
  const TreeBitsets bits(trees, m);
  std::vector<char> alive(trees.size(), 1);
  DissimilarSet out;
  out.separation = d;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!alive[i]) continue;
    out.trees.push_back(trees[i]);
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      if (alive[j] && static_cast<double>(bits.distance(i, j)) <= d) alive[j] = 0;
    }
  }
  return out;
}

// log of m^floor(d) * n^floor(d), an upper bound on the closed d-ball.
inline double ball_volume_bound(const Graph& g, double d) {
  require(d > 0, "ball radius must be positive");
  const double k = std::floor(d);
  return k * (std::log(static_cast<double>(g.num_edges())) +
              std::log(static_cast<double>(g.num_vertices())));
}

inline bool is_complete(const Graph& g) {
  const std::size_t n = g.num_vertices();
  return g.num_edges() == n * (n - 1) / 2;
}

struct DissimilarSetReport {
  DissimilarSet set;
  std::size_t diameter_used;  // R0 on the code path, n-1 on the clique path
  bool from_packing;
};

// Large set of pairwise far-apart trees. Cliques whose trees can be
// enumerated use greedy packing at radius (n-2)/6; everything else embeds
// the greedy code of length R0 between the reference tree and its farthest
// tree.
inline DissimilarSetReport dissimilar_set_report(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (is_complete(g) && n >= 3) {
    try {
      auto trees = enumerate_spanning_trees(g);
      const double d = (static_cast<double>(n) - 2) / 6;
      if (d > 0) return {greedy_packing(std::move(trees), d), n - 1, true};
    } catch (const GuardExceeded&) {
      // fall through to the code construction
    }
  }
  const SpanningTree t0 = reference_tree(g);
  const SpanningTree tb = farthest_tree(g, t0);
  const std::size_t r0 = hamming_distance(t0, tb);
  return {embed_code(g, t0, tb, gv_code(r0)), r0, false};
}

inline DissimilarSet dissimilar_set(const Graph& g) { return dissimilar_set_report(g).set; }

}  // namespace dpmst
