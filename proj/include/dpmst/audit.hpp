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
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/mechanisms.hpp"
#include "dpmst/rng.hpp"
#include "dpmst/tree_count.hpp"

namespace dpmst {

// Neighbouring perturbations: unit l1 norm, or unit l_inf norm. The list
// starts with the single-edge extremes +-e_i (and, for l_inf, the all-ones
// vectors), then fills up with random directions.
inline std::vector<std::vector<double>> audit_directions(std::size_t m, NeighborRelation rel,
                                                         std::size_t count, Rng& rng) {
  std::vector<std::vector<double>> dirs;
  auto push = [&](std::vector<double> d) {
    if (dirs.size() < count) dirs.push_back(std::move(d));
  };
  if (rel == NeighborRelation::LInf) {
    push(std::vector<double>(m, 1.0));
    push(std::vector<double>(m, -1.0));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> d(m, 0.0);
      d[i] = s;
      push(std::move(d));
    }
  }
  while (dirs.size() < count) {
    std::vector<double> d(m);
    if (rel == NeighborRelation::L1) {
      double total = 0.0;
      for (double& x : d) total += (x = -std::log(rng.uniform_open()));
      for (double& x : d) x = (rng.uniform() < 0.5 ? -x : x) / total;
    } else if (rng.uniform() < 0.5) {
      for (double& x : d) x = rng.uniform() < 0.5 ? -1.0 : 1.0;
    } else {
      for (double& x : d) x = 2.0 * rng.uniform() - 1.0;
      d[rng.below(m)] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    dirs.push_back(std::move(d));
  }
  return dirs;
}

struct AuditReport {
  double max_log_ratio = 0.0;  // max over directions and trees of |log Pr ratio|
  double epsilon = 0.0;
  std::size_t directions = 0;
  std::size_t trees = 0;

  double max_ratio() const { return std::exp(max_log_ratio); }
  double bound() const { return std::exp(epsilon); }
  // Passes when the ratio is at most e^eps (1 + 1e-9).
  bool pass() const { return max_log_ratio <= epsilon + std::log1p(1e-9); }
};

namespace detail {

inline std::vector<double> log_probabilities(std::span<const SpanningTree> trees,
                                             const std::vector<double>& w, double lambda) {
  std::vector<double> lp(trees.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trees.size(); ++i) {
    double s = 0.0;
    for (EdgeId e : trees[i].edges()) s += w[e];
    best = std::max(best, lp[i] = -lambda * s);
  }
  double z = 0.0;
  for (double x : lp) z += std::exp(x - best);
  const double log_z = best + std::log(z);
  for (double& x : lp) x -= log_z;
  return lp;
}

}  // namespace detail

// Exact privacy audit of the exponential mechanism: for each direction,
// compares the enumerated output laws at w and w + delta.
inline AuditReport audit_exponential(const Graph& g, const WeightVector& w, double epsilon,
                                     NeighborRelation rel,
                                     const std::vector<std::vector<double>>& directions) {
  w.check_against(g);
  const MechanismConfig cfg{epsilon, rel, 0};
  const double lambda = exponential_lambda(g, cfg);
  const auto trees = enumerate_spanning_trees(g);
  const std::vector<double> base(w.values().begin(), w.values().end());
  const auto lp = detail::log_probabilities(trees, base, lambda);

  AuditReport rep;
  rep.epsilon = epsilon;
  rep.trees = trees.size();
  for (const auto& d : directions) {
    require(d.size() == base.size(), "direction length must equal the edge count");
    std::vector<double> moved(base);
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += d[i];
    const auto lq = detail::log_probabilities(trees, moved, lambda);
    for (std::size_t i = 0; i < trees.size(); ++i) {
      rep.max_log_ratio = std::max(rep.max_log_ratio, std::abs(lp[i] - lq[i]));
    }
    ++rep.directions;
  }
  return rep;
}

// The Laplace mechanism releases noisy weights; its privacy loss for a
// shift delta is at most sum_e |delta_e| / b, and the MST is
// post-processing. This evaluates that density-ratio bound.
inline AuditReport audit_laplace(const Graph& g, double epsilon, NeighborRelation rel,
                                 const std::vector<std::vector<double>>& directions) {
  const double b = laplace_scale(g, MechanismConfig{epsilon, rel, 0});
  AuditReport rep;
  rep.epsilon = epsilon;
  for (const auto& d : directions) {
    double l1 = 0.0;
    for (double x : d) l1 += std::abs(x);
    rep.max_log_ratio = std::max(rep.max_log_ratio, l1 / b);
    ++rep.directions;
  }
  return rep;
}

}  // namespace dpmst
