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

// Command-line front end: graph generation, MST release, diameter and
// lower-bound tooling, exact privacy audits and seeded benchmarks.
//
// Exit codes: 0 success, 1 validation error, 2 enumeration guard exceeded,
// 3 numerics error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dpmst/bench_spec.hpp"
#include "dpmst/dpmst.hpp"

namespace {

using namespace dpmst;

struct Options {
  std::string family;
  std::vector<double> params;
  std::string out;
  std::string graph;
  std::string weights;
  std::string mech = "expmech";
  std::string rel = "l1";
  double eps = 1.0;
  std::uint64_t seed = 0;
  bool exact = false;
  std::size_t dirs = 50;
  std::string spec;
};

void print_tree(const SpanningTree& t) { io::write_tree(std::cout, t); }

int cmd_gen(const Options& o) {
  const Graph g = generate_graph(o.family, o.params);
  if (o.out.empty()) {
    io::write_graph(std::cout, g);
  } else {
    io::write_graph_file(o.out, g);
  }
  return 0;
}

int cmd_mst(const Options& o) {
  const Graph g = io::read_graph_file(o.graph);
  const WeightVector w = io::read_weights_file(o.weights, g.num_edges());
  const SpanningTree t = mst(g, w);
  print_tree(t);
  std::cout << "weight " << io::format_real(tree_weight(w, t)) << '\n';
  return 0;
}

int cmd_release(const Options& o) {
  const Graph g = io::read_graph_file(o.graph);
  const WeightVector w = io::read_weights_file(o.weights, g.num_edges());
  const MechanismConfig cfg{o.eps, parse_relation(o.rel), o.seed};
  cfg.validate();
  print_tree(release(parse_mechanism(o.mech), g, w, cfg));
  return 0;
}

int cmd_diam(const Options& o) {
  const Graph g = io::read_graph_file(o.graph);
  std::cout << "R0 " << diameter_2approx(g, reference_tree(g)) << '\n';
  if (o.exact) std::cout << "D " << diameter_exact(g) << '\n';
  return 0;
}

int cmd_dissimilar(const Options& o) {
  const Graph g = io::read_graph_file(o.graph);
  const DissimilarSetReport rep = dissimilar_set_report(g);
  if (o.out.empty()) {
    io::write_dissimilar_set(std::cout, rep.set);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + o.out + "'");
    io::write_dissimilar_set(f, rep.set);
  }
  std::cerr << "size " << rep.set.trees.size() << " separation "
            << io::format_real(rep.set.separation) << " method "
            << (rep.from_packing ? "packing" : "code") << '\n';
  return 0;
}

int cmd_lowerbound(const Options& o) {
  const Graph g = io::read_graph_file(o.graph);
  const LowerBoundReport r = lower_bound_value(g, o.eps, parse_relation(o.rel));
  std::cout << "value " << io::format_real(r.value) << '\n'
            << "set_size " << r.set_size << '\n'
            << "separation " << io::format_real(r.separation) << '\n'
            << (r.diameter.exact ? "D " : "R0 ") << r.diameter.value << '\n'
            << "vacuous " << (r.vacuous() ? "yes" : "no") << '\n';
  return 0;
}

int cmd_audit(const Options& o) {
  const Graph g = io::read_graph_file(o.graph);
  const WeightVector w = io::read_weights_file(o.weights, g.num_edges());
  const NeighborRelation rel = parse_relation(o.rel);
  require(o.eps > 0 && std::isfinite(o.eps), "epsilon must be finite and positive");
  Rng rng(o.seed);
  const auto dirs = audit_directions(g.num_edges(), rel, o.dirs, rng);
  bool ok = true;
  auto show = [&](const char* name, const AuditReport& r) {
    std::cout << name << " max_ratio " << io::format_real(r.max_ratio()) << " bound "
              << io::format_real(r.bound()) << " directions " << r.directions << ' '
              << (r.pass() ? "PASS" : "FAIL") << '\n';
    ok = ok && r.pass();
  };
  if (o.mech == "expmech" || o.mech == "both") show("expmech", audit_exponential(g, w, o.eps, rel, dirs));
  if (o.mech == "laplace" || o.mech == "both") show("laplace", audit_laplace(g, o.eps, rel, dirs));
  if (o.mech != "expmech" && o.mech != "laplace" && o.mech != "both") {
    throw ValidationError("audit --mech must be expmech, laplace or both");
  }
  return ok ? 0 : 4;
}

int cmd_bench(const Options& o) {
  std::ifstream in(o.spec);
  if (!in) throw ValidationError("cannot open '" + o.spec + "'");
  std::stringstream text;
  text << in.rdbuf();
  const BenchSpec spec = parse_bench_spec(text.str());

  std::vector<ExperimentRow> rows;
  if (const auto* e = std::get_if<ExperimentSpec>(&spec)) {
    rows = run_experiment(*e);
  } else {
    const auto& s = std::get<SeparationSpec>(spec);
    auto res = separation_experiment(s.n_list, s.epsilon, s.trials, s.seed, s.threads);
    for (const auto& p : res.summary) {
      std::cerr << "n " << p.n << " laplace " << io::format_real(p.laplace_mean) << " expmech "
                << io::format_real(p.expmech_mean) << '\n';
    }
    rows = std::move(res.rows);
  }
  if (o.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + o.out + "'");
    write_csv(f, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private minimum spanning trees"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("--family", o.family, "cycle | clique | grid | tree_plus_k | gnp_connected")->required();
  gen->add_option("--params", o.params, "Family parameters")->required();
  gen->add_option("--out", o.out, "Output graph file (stdout if omitted)");

  auto* mst_cmd = app.add_subcommand("mst", "Print the deterministic MST");
  mst_cmd->add_option("--graph", o.graph)->required();
  mst_cmd->add_option("--weights", o.weights)->required();

  auto* rel_cmd = app.add_subcommand("release", "Release a spanning tree privately");
  rel_cmd->add_option("--graph", o.graph)->required();
  rel_cmd->add_option("--weights", o.weights)->required();
  rel_cmd->add_option("--mech", o.mech)->check(CLI::IsMember({"laplace", "expmech"}));
  rel_cmd->add_option("--rel", o.rel)->check(CLI::IsMember({"l1", "linf"}));
  rel_cmd->add_option("--eps", o.eps)->required();
  rel_cmd->add_option("--seed", o.seed);

  auto* diam = app.add_subcommand("diam", "Tree-space diameter (R0, optionally exact D)");
  diam->add_option("--graph", o.graph)->required();
  diam->add_flag("--exact", o.exact);

  auto* dis = app.add_subcommand("dissimilar", "Build a set of pairwise far-apart spanning trees");
  dis->add_option("--graph", o.graph)->required();
  dis->add_option("--out", o.out);

  auto* lb = app.add_subcommand("lowerbound", "Evaluate the packing lower bound");
  lb->add_option("--graph", o.graph)->required();
  lb->add_option("--eps", o.eps)->required();
  lb->add_option("--rel", o.rel)->check(CLI::IsMember({"l1", "linf"}));

  auto* audit = app.add_subcommand("audit", "Exact privacy audit on an enumerable graph");
  audit->add_option("--graph", o.graph)->required();
  audit->add_option("--weights", o.weights)->required();
  audit->add_option("--eps", o.eps)->required();
  audit->add_option("--rel", o.rel)->check(CLI::IsMember({"l1", "linf"}));
  audit->add_option("--dirs", o.dirs, "Number of neighbouring directions");
  audit->add_option("--mech", o.mech, "expmech | laplace | both");
  audit->add_option("--seed", o.seed);

  auto* bench = app.add_subcommand("bench", "Run a seeded experiment spec and write CSV");
  bench->add_option("--spec", o.spec)->required();
  bench->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*mst_cmd) return cmd_mst(o);
    if (*rel_cmd) return cmd_release(o);
    if (*diam) return cmd_diam(o);
    if (*dis) return cmd_dissimilar(o);
    if (*lb) return cmd_lowerbound(o);
    if (*audit) return cmd_audit(o);
    if (*bench) return cmd_bench(o);
  } catch (const dpmst::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return 1;
}
