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
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/generators.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/io.hpp"
#include "dpmst/mechanisms.hpp"
#include "dpmst/mst.hpp"
#include "dpmst/rng.hpp"

namespace dpmst {

struct GraphSource {
  std::string family;          // generator name, or empty when `file` is set
  std::vector<double> params;  // generator parameters
  std::string file;
  std::string id;              // label for the graph_id column; derived if empty

  std::string label() const {
    if (!id.empty()) return id;
    if (!file.empty()) return file;
    std::string s = family + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) s += ",";
      s += io::format_real(params[i]);
    }
    return s + ")";
  }
};

enum class WeightKind { File, Zeros, Uniform, Indicator };

struct WeightSource {
  WeightKind kind = WeightKind::Zeros;
  std::string file;
  double lo = 0.0;
  double hi = 1.0;
  double scale = 1.0;  // Indicator: scale * 1_T for the reference tree T
};

struct ExperimentSpec {
  GraphSource graph;
  WeightSource weights;
  Mechanism mechanism = Mechanism::Laplace;
  NeighborRelation relation = NeighborRelation::L1;
  std::vector<double> epsilons{1.0};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t threads = 1;

  void validate() const {
    require(trials >= 1, "trials must be at least 1");
    require(!epsilons.empty(), "at least one epsilon is required");
    for (double e : epsilons) require(std::isfinite(e) && e > 0, "epsilon entries must be positive");
    require(threads >= 1, "threads must be at least 1");
    if (weights.kind == WeightKind::Uniform) require(weights.lo <= weights.hi, "uniform range is empty");
  }
};

struct ExperimentRow {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_or_r0 = 0;
  NeighborRelation relation = NeighborRelation::L1;
  Mechanism mechanism = Mechanism::Laplace;
  double epsilon = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double error = 0.0;
  std::int64_t runtime_ns = 0;
};

// Stream index reserved for drawing random weight vectors.
inline constexpr std::uint64_t kWeightStream = 0x5745494748545321ULL;

inline Graph resolve_graph(const GraphSource& src) {
  if (!src.file.empty()) return io::read_graph_file(src.file);
  return generate_graph(src.family, src.params);
}

inline WeightVector resolve_weights(const WeightSource& src, const Graph& g, std::uint64_t seed) {
  switch (src.kind) {
    case WeightKind::File:
      return io::read_weights_file(src.file, g.num_edges());
    case WeightKind::Zeros:
      return WeightVector::zeros(g.num_edges());
    case WeightKind::Uniform: {
      Rng rng = Rng::stream(seed, kWeightStream);
      std::vector<double> w(g.num_edges());
      for (double& x : w) x = src.lo + (src.hi - src.lo) * rng.uniform();
      return WeightVector(std::move(w));
    }
    case WeightKind::Indicator: {
      const WeightVector ind = indicator_weights(g, reference_tree(g));
      std::vector<double> w(ind.values().begin(), ind.values().end());
      for (double& x : w) x *= src.scale;
      return WeightVector(std::move(w));
    }
  }
  throw ValidationError("unknown weight source");
}

// Seed of trial `trial` under epsilon number `eps_index`; a run with this
// seed through `release` reproduces the trial.
inline std::uint64_t trial_seed(std::uint64_t root, std::size_t eps_index, std::size_t trial) {
  return Rng::stream(root, (static_cast<std::uint64_t>(eps_index) << 32) | trial).next();
}

namespace detail {

// Runs body(i) for i in [0, count) on `threads` workers with a static
// striped schedule. Results depend only on i.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

// One row per (epsilon, trial), ordered by epsilon then trial. The
// D_or_R0 column carries R0 from the reference tree.
inline std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Graph g = resolve_graph(spec.graph);
  const WeightVector w = resolve_weights(spec.weights, g, spec.seed);
  const std::size_t r0 = diameter_2approx(g, reference_tree(g));
  const double best = tree_weight(w, mst(g, w));

  std::vector<std::size_t> order(spec.epsilons.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return spec.epsilons[a] < spec.epsilons[b]; });

  std::vector<ExperimentRow> rows(spec.epsilons.size() * spec.trials);
  const std::string label = spec.graph.label();
  detail::parallel_for(rows.size(), spec.threads, [&](std::size_t idx) {
    const std::size_t eps_index = order[idx / spec.trials];
    const std::size_t trial = idx % spec.trials;
    ExperimentRow& row = rows[idx];
    row.graph_id = label;
    row.n = g.num_vertices();
    row.m = g.num_edges();
    row.d_or_r0 = r0;
    row.relation = spec.relation;
    row.mechanism = spec.mechanism;
    row.epsilon = spec.epsilons[eps_index];
    row.trial = trial;
    row.seed = trial_seed(spec.seed, eps_index, trial);
    const MechanismConfig cfg{row.epsilon, spec.relation, row.seed};
    const auto start = std::chrono::steady_clock::now();
    const SpanningTree t = release(spec.mechanism, g, w, cfg);
    const auto stop = std::chrono::steady_clock::now();
    row.error = tree_weight(w, t) - best;
    row.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  });
  return rows;
}

inline constexpr const char* kCsvHeader =
    "graph_id,n,m,D_or_R0,relation,mechanism,epsilon,trial,seed,error,runtime_ns";

inline void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kCsvHeader << "\r\n";
  for (const auto& r : rows) {
    out << io::csv_field(r.graph_id) << ',' << r.n << ',' << r.m << ',' << r.d_or_r0 << ','
        << to_string(r.relation) << ',' << to_string(r.mechanism) << ','
        << io::format_real(r.epsilon) << ',' << r.trial << ',' << r.seed << ','
        << io::format_real(r.error) << ',' << r.runtime_ns << "\r\n";
  }
}

struct SeparationPoint {
  std::size_t n;
  double laplace_mean;
  double expmech_mean;
  double ratio() const { return laplace_mean / expmech_mean; }
};

struct SeparationResult {
  std::vector<ExperimentRow> rows;
  std::vector<SeparationPoint> summary;
};

// Both mechanisms under l_inf on cycle(n). The weights put (m / eps) on
// the one edge outside the reference tree and zero elsewhere, so the
// Laplace noise scale under l_inf equals the gap the mechanism must see.
inline SeparationResult separation_experiment(const std::vector<std::size_t>& n_list,
                                              double epsilon, std::size_t trials,
                                              std::uint64_t seed, std::size_t threads = 1) {
  SeparationResult res;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    double means[2] = {0.0, 0.0};
    for (Mechanism mech : {Mechanism::Laplace, Mechanism::Exponential}) {
      ExperimentSpec spec;
      spec.graph.family = "cycle";
      spec.graph.params = {static_cast<double>(n_list[k])};
      spec.weights.kind = WeightKind::Indicator;
      spec.weights.scale = static_cast<double>(n_list[k]) / epsilon;
      spec.mechanism = mech;
      spec.relation = NeighborRelation::LInf;
      spec.epsilons = {epsilon};
      spec.trials = trials;
      spec.seed = Rng::stream(seed, 2 * k + (mech == Mechanism::Laplace ? 0 : 1)).next();
      spec.threads = threads;
      auto rows = run_experiment(spec);
      double sum = 0.0;
      for (const auto& r : rows) sum += r.error;
      means[mech == Mechanism::Laplace ? 0 : 1] = sum / static_cast<double>(rows.size());
      res.rows.insert(res.rows.end(), rows.begin(), rows.end());
    }
    res.summary.push_back({n_list[k], means[0], means[1]});
  }
  return res;
}

}  // namespace dpmst
