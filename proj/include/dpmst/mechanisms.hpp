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
#include <string>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/mst.hpp"
#include "dpmst/rng.hpp"
#include "dpmst/sampler.hpp"

namespace dpmst {

struct MechanismConfig {
  double epsilon = 1.0;
  NeighborRelation relation = NeighborRelation::L1;
  std::uint64_t seed = 0;

  void validate() const {
    require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be finite and positive");
  }
};

enum class Mechanism { Laplace, Exponential };

inline std::string to_string(Mechanism m) {
  return m == Mechanism::Laplace ? "laplace" : "expmech";
}

inline Mechanism parse_mechanism(const std::string& s) {
  if (s == "laplace") return Mechanism::Laplace;
  if (s == "expmech" || s == "exponential") return Mechanism::Exponential;
  throw ValidationError("unknown mechanism '" + s + "'");
}

// Laplace(b) by inverse CDF: u uniform on (-1/2, 1/2),
// x = -b * sign(u) * ln(1 - 2|u|).
inline double sample_laplace(double b, Rng& rng) {
  require(b > 0 && std::isfinite(b), "Laplace scale must be positive");
  const double u = rng.uniform_open() - 0.5;
  if (u == 0.0) return 0.0;
  const double mag = -b * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -mag : mag;
}

// b = 1/eps under l1 neighbours; under l_inf a neighbour can move all m
// weights, so b = m/eps.
inline double laplace_scale(const Graph& g, const MechanismConfig& cfg) {
  cfg.validate();
  return cfg.relation == NeighborRelation::L1
             ? 1.0 / cfg.epsilon
             : static_cast<double>(g.num_edges()) / cfg.epsilon;
}

// Releases the MST of the Laplace-noised weights.
inline SpanningTree laplace_mechanism(const Graph& g, const WeightVector& w,
                                      const MechanismConfig& cfg, Rng& rng) {
  w.check_against(g);
  const double b = laplace_scale(g, cfg);
  std::vector<double> noisy(w.values().begin(), w.values().end());
  for (double& x : noisy) x += sample_laplace(b, rng);
  return detail::kruskal(g, noisy);
}

inline SpanningTree laplace_mechanism(const Graph& g, const WeightVector& w,
                                      const MechanismConfig& cfg) {
  Rng rng(cfg.seed);
  return laplace_mechanism(g, w, cfg, rng);
}

// lambda for Pr[T] ~ exp(-lambda w(T)). Under l1 the loss w(T) has
// sensitivity 1, so lambda = eps/2. Under l_inf the shifted loss
// w(T) - w(T0) has sensitivity at most 2 R0, so lambda = eps/(4 R0), with T0
// the zero-weight MST.
inline double exponential_lambda(const Graph& g, const MechanismConfig& cfg) {
  cfg.validate();
  if (cfg.relation == NeighborRelation::L1) return cfg.epsilon / 2.0;
  const std::size_t r0 = diameter_2approx(g, reference_tree(g));
  return cfg.epsilon / (4.0 * static_cast<double>(r0));
}

// Per-edge log factors -lambda (w(e) - min w). Subtracting the minimum does
// not change the tree distribution since every tree has n-1 edges.
inline std::vector<double> exponential_log_factors(const WeightVector& w, double lambda) {
  const auto vals = w.values();
  const double lo = vals.empty() ? 0.0 : *std::min_element(vals.begin(), vals.end());
  std::vector<double> out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = -lambda * (vals[i] - lo);
  return out;
}

inline SpanningTree exponential_mechanism(const Graph& g, const WeightVector& w,
                                          const MechanismConfig& cfg, Rng& rng) {
  w.check_against(g);
  const double lambda = exponential_lambda(g, cfg);
  return sample_spanning_tree_log(g, exponential_log_factors(w, lambda), rng).tree;
}

inline SpanningTree exponential_mechanism(const Graph& g, const WeightVector& w,
                                          const MechanismConfig& cfg) {
  Rng rng(cfg.seed);
  return exponential_mechanism(g, w, cfg, rng);
}

inline SpanningTree release(Mechanism mech, const Graph& g, const WeightVector& w,
                            const MechanismConfig& cfg, Rng& rng) {
  return mech == Mechanism::Laplace ? laplace_mechanism(g, w, cfg, rng)
                                    : exponential_mechanism(g, w, cfg, rng);
}

inline SpanningTree release(Mechanism mech, const Graph& g, const WeightVector& w,
                            const MechanismConfig& cfg) {
  Rng rng(cfg.seed);
  return release(mech, g, w, cfg, rng);
}

// Exact output law of the exponential mechanism, by enumeration.
inline TreeDistribution exponential_distribution(const Graph& g, const WeightVector& w,
                                                 double lambda) {
  w.check_against(g);
  return exact_tree_distribution(g, exponential_log_factors(w, lambda));
}

// w(T) - w(T*) for the released tree.
inline double release_error(const Graph& g, const WeightVector& w, const SpanningTree& t) {
  return tree_weight(w, t) - tree_weight(w, mst(g, w));
}

}  // namespace dpmst
