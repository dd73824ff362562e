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
#include <optional>
#include <string>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/mechanisms.hpp"
#include "dpmst/mst.hpp"
#include "dpmst/rng.hpp"
#include "dpmst/tree_count.hpp"
#include "dpmst/tree_space.hpp"

namespace dpmst {

// Diameter used by the lower-bound formulas: exact when the trees can be
// enumerated, otherwise the 2-approximation R0.
struct DiameterEstimate {
  std::size_t value;
  bool exact;
};

inline DiameterEstimate diameter_for_bounds(const Graph& g) {
  try {
    return {diameter_exact(g), true};
  } catch (const GuardExceeded&) {
    return {diameter_2approx(g, reference_tree(g)), false};
  }
}

// The weight family {alpha * 1_T : T in S} together with its light-set
// radius x = alpha * d / 2 and neighbour-distance radius r.
struct PackingInstance {
  std::vector<SpanningTree> trees;
  std::vector<WeightVector> weights;
  double alpha = 0.0;
  double x = 0.0;
  NeighborRelation relation = NeighborRelation::L1;
  long r = 0;
  double separation = 0.0;
  double epsilon = 0.0;
  DiameterEstimate diameter{0, false};
};

inline double packing_alpha(std::size_t set_size, std::size_t diameter, double epsilon,
                            NeighborRelation rel) {
  const double log_s = std::log(static_cast<double>(set_size));
  if (rel == NeighborRelation::L1) {
    const double d = static_cast<double>(diameter);
    return log_s / (4.0 * epsilon * d) - 1.0 / (2.0 * d);
  }
  return log_s / (2.0 * epsilon) - 1.0;
}

inline PackingInstance build_packing_instance(const Graph& g, const DissimilarSet& s,
                                              double epsilon, NeighborRelation rel,
                                              std::optional<DiameterEstimate> diameter = {}) {
  require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be finite and positive");
  require(s.trees.size() >= 2, "a packing instance needs at least two trees");
  PackingInstance inst;
  inst.diameter = diameter ? *diameter : diameter_for_bounds(g);
  require(inst.diameter.value >= 1, "diameter must be positive");
  inst.alpha = packing_alpha(s.trees.size(), inst.diameter.value, epsilon, rel);
  if (!(inst.alpha > 0)) {
    throw ValidationError("alpha = " + std::to_string(inst.alpha) + " is not positive: |S| = " +
                          std::to_string(s.trees.size()) + " is too small for eps = " +
                          std::to_string(epsilon));
  }
  inst.trees = s.trees;
  inst.relation = rel;
  inst.separation = s.separation;
  inst.epsilon = epsilon;
  inst.x = inst.alpha * s.separation / 2.0;
  inst.r = rel == NeighborRelation::L1
               ? static_cast<long>(std::ceil(2.0 * inst.alpha * static_cast<double>(inst.diameter.value)))
               : static_cast<long>(std::ceil(inst.alpha));
  inst.weights.reserve(s.trees.size());
  for (const auto& t : s.trees) {
    std::vector<double> w(g.num_edges(), inst.alpha);
    for (EdgeId e : t.edges()) w[e] = 0.0;
    inst.weights.emplace_back(std::move(w));
  }
  return inst;
}

namespace detail {

// Slack for the <= comparison in light sets, so that a tree exactly on the
// boundary is not lost to roundoff.
inline double light_tolerance(double a, double b) {
  return 1e-12 * (1.0 + std::abs(a) + std::abs(b));
}

inline std::vector<std::size_t> light_indices(std::span<const SpanningTree> trees,
                                              const WeightVector& w, double x) {
  std::vector<double> tw(trees.size());
  double best = INFINITY;
  for (std::size_t i = 0; i < trees.size(); ++i) best = std::min(best, tw[i] = tree_weight(w, trees[i]));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (tw[i] <= best + x + light_tolerance(best, x)) out.push_back(i);
  }
  return out;
}

}  // namespace detail

// Trees within additive x of the minimum weight.
inline std::vector<SpanningTree> light_set(const Graph& g, const WeightVector& w, double x) {
  w.check_against(g);
  const auto trees = enumerate_spanning_trees(g);
  std::vector<SpanningTree> out;
  for (std::size_t i : detail::light_indices(trees, w, x)) out.push_back(trees[i]);
  return out;
}

struct DisjointnessResult {
  bool disjoint = true;
  std::optional<SpanningTree> witness;  // a tree light under two weights
  std::size_t first = 0;
  std::size_t second = 0;
};

inline DisjointnessResult verify_disjointness(const Graph& g, const PackingInstance& inst) {
  const auto trees = enumerate_spanning_trees(g);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(trees.size(), kNone);
  for (std::size_t wi = 0; wi < inst.weights.size(); ++wi) {
    for (std::size_t ti : detail::light_indices(trees, inst.weights[wi], inst.x)) {
      if (owner[ti] != kNone) return {false, trees[ti], owner[ti], wi};
      owner[ti] = wi;
    }
  }
  return {};
}

struct LowerBoundReport {
  double value;
  std::size_t set_size;
  double separation;
  DiameterEstimate diameter;
  bool vacuous() const { return !(value > 0); }
};

// Error level x below which any eps-DP mechanism succeeds with probability
// at most |S|^{-1/2} on some weight vector of the family.
inline double lower_bound_formula(std::size_t set_size, double separation, std::size_t diameter,
                                  double epsilon, NeighborRelation rel) {
  const double log_s = std::log(static_cast<double>(set_size));
  if (rel == NeighborRelation::L1) {
    return separation / static_cast<double>(diameter) * (log_s / (8.0 * epsilon) - 0.25);
  }
  return separation * (log_s / (4.0 * epsilon) - 0.5);
}

inline LowerBoundReport lower_bound_value(const Graph& g, double epsilon, NeighborRelation rel) {
  require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be finite and positive");
  const DissimilarSet s = dissimilar_set(g);
  const DiameterEstimate d = diameter_for_bounds(g);
  return {lower_bound_formula(s.trees.size(), s.separation, d.value, epsilon, rel),
          s.trees.size(), s.separation, d};
}

struct StressReport {
  std::vector<double> success_fraction;  // per instance weight vector
  std::size_t trials = 0;
  double cap = 0.0;             // |S|^{-1/2}
  double standard_error = 0.0;  // binomial SE at p = cap

  bool empty() const { return success_fraction.empty(); }
  double min_fraction() const {
    return empty() ? 0.0 : *std::min_element(success_fraction.begin(), success_fraction.end());
  }
  bool within_cap() const { return empty() || min_fraction() <= cap + 3.0 * standard_error; }
};

// Runs `mech` `trials` times on every weight vector of the instance and
// records how often the error stays within inst.x.
inline StressReport stress_mechanism(const Graph& g, const PackingInstance& inst, Mechanism mech,
                                     std::size_t trials, Rng& rng) {
  StressReport rep;
  rep.trials = trials;
  rep.cap = 1.0 / std::sqrt(static_cast<double>(inst.weights.size()));
  if (trials == 0) return rep;
  rep.standard_error = std::sqrt(rep.cap * (1.0 - rep.cap) / static_cast<double>(trials));
  const MechanismConfig cfg{inst.epsilon, inst.relation, 0};
  for (const auto& w : inst.weights) {
    const double best = tree_weight(w, mst(g, w));
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const SpanningTree out = release(mech, g, w, cfg, rng);
      const double err = tree_weight(w, out) - best;
      if (err <= inst.x + detail::light_tolerance(best, inst.x)) ++hits;
    }
    rep.success_fraction.push_back(static_cast<double>(hits) / static_cast<double>(trials));
  }
  return rep;
}

}  // namespace dpmst
