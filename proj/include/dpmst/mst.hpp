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
#include <numeric>
#include <span>
#include <vector>

#include "dpmst/graph.hpp"

namespace dpmst {

namespace detail {

// Kruskal over raw weights. Edges are scanned in (weight, edge id) order,
// so equal weights resolve towards the lower edge id.
inline SpanningTree kruskal(const Graph& g, std::span<const double> w) {
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return w[a] < w[b] || (w[a] == w[b] && a < b);
  });
  DisjointSets ds(g.num_vertices());
  std::vector<EdgeId> picked;
  picked.reserve(g.num_vertices() - 1);
  for (EdgeId e : order) {
    if (ds.unite(g.edge(e).u, g.edge(e).v)) {
      picked.push_back(e);
      if (picked.size() + 1 == g.num_vertices()) break;
    }
  }
  return SpanningTree::trusted(std::move(picked));
}

}  // namespace detail

inline SpanningTree mst(const Graph& g, const WeightVector& w) {
  w.check_against(g);
  return detail::kruskal(g, w.values());
}

// R0 = max over spanning trees T of d_H(T0, T). The maximiser is the MST
// under -1_{T0}: every tree has n-1 edges, so minimising -|T \ T0| maximises
// the distance. D/2 <= R0 <= D by the triangle inequality.
inline std::size_t diameter_2approx(const Graph& g, const SpanningTree& t0) {
  std::vector<double> w(g.num_edges(), -1.0);
  for (EdgeId e : t0.edges()) w[e] = 0.0;
  return hamming_distance(t0, detail::kruskal(g, w));
}

// Tree realising R0 from t0.
inline SpanningTree farthest_tree(const Graph& g, const SpanningTree& t0) {
  std::vector<double> w(g.num_edges(), -1.0);
  for (EdgeId e : t0.edges()) w[e] = 0.0;
  return detail::kruskal(g, w);
}

// The fixed reference tree used wherever a canonical tree is needed.
inline SpanningTree reference_tree(const Graph& g) {
  return detail::kruskal(g, std::vector<double>(g.num_edges(), 0.0));
}

}  // namespace dpmst
