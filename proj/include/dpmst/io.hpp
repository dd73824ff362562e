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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dpmst/errors.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/tree_space.hpp"

namespace dpmst::io {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line_no) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ValidationError("line " + std::to_string(line_no) + ": '" + std::string(tok) +
                          "' is not a non-negative integer");
  }
  return v;
}

inline double parse_real(std::string_view tok, std::size_t line_no) {
  double v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ValidationError("line " + std::to_string(line_no) + ": '" + std::string(tok) +
                          "' is not a finite decimal number");
  }
  return v;
}

// Reads all lines, dropping trailing blank ones. Interior blank lines stay
// and are rejected by the callers.
inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
  return lines;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  return f;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  return f;
}

}  // namespace detail

// Shortest decimal text that reads back to the same double.
inline std::string format_real(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

// Graph text: "n m", then m lines "u v".
inline Graph read_graph(std::istream& in) {
  const auto lines = detail::read_lines(in);
  if (lines.empty()) throw ValidationError("graph file is empty");
  const auto head = detail::split_ws(lines[0]);
  if (head.size() != 2) throw ValidationError("line 1: expected 'n m'");
  const std::size_t n = detail::parse_index(head[0], 1);
  const std::size_t m = detail::parse_index(head[1], 1);
  if (lines.size() != m + 1) {
    throw ValidationError("expected " + std::to_string(m) + " edge lines, found " +
                          std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto tok = detail::split_ws(lines[i]);
    if (tok.size() != 2) throw ValidationError("line " + std::to_string(i + 1) + ": expected 'u v'");
    edges.push_back({detail::parse_index(tok[0], i + 1), detail::parse_index(tok[1], i + 1)});
  }
  return build_graph(n, std::move(edges));
}

inline Graph read_graph_file(const std::string& path) {
  auto f = detail::open_in(path);
  return read_graph(f);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_graph_file(const std::string& path, const Graph& g) {
  auto f = detail::open_out(path);
  write_graph(f, g);
}

// Weights text: one decimal per line, aligned to edge ids.
inline WeightVector read_weights(std::istream& in, std::size_t m) {
  const auto lines = detail::read_lines(in);
  if (lines.size() != m) {
    throw ValidationError("expected " + std::to_string(m) + " weights, found " +
                          std::to_string(lines.size()));
  }
  std::vector<double> w;
  w.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto tok = detail::split_ws(lines[i]);
    if (tok.size() != 1) throw ValidationError("line " + std::to_string(i + 1) + ": expected one weight");
    w.push_back(detail::parse_real(tok[0], i + 1));
  }
  return WeightVector(std::move(w));
}

inline WeightVector read_weights_file(const std::string& path, std::size_t m) {
  auto f = detail::open_in(path);
  return read_weights(f, m);
}

inline void write_weights(std::ostream& out, const WeightVector& w) {
  for (double x : w.values()) out << format_real(x) << '\n';
}

// Tree text: space-separated ascending edge ids on one line.
inline void write_tree(std::ostream& out, const SpanningTree& t) {
  bool first = true;
  for (EdgeId e : t.edges()) {
    if (!first) out << ' ';
    out << e;
    first = false;
  }
  out << '\n';
}

// CodeBook text: "n M d", then M lines of n characters from {0,1}.
inline void write_codebook(std::ostream& out, const CodeBook& c) {
  out << c.length << ' ' << c.words.size() << ' ' << c.min_distance << '\n';
  for (std::size_t w = 0; w < c.words.size(); ++w) {
    for (std::size_t i = 0; i < c.length; ++i) out << (c.bit(w, i) ? '1' : '0');
    out << '\n';
  }
}

inline CodeBook read_codebook(std::istream& in) {
  const auto lines = detail::read_lines(in);
  if (lines.empty()) throw ValidationError("codebook is empty");
  const auto head = detail::split_ws(lines[0]);
  if (head.size() != 3) throw ValidationError("line 1: expected 'n M d'");
  CodeBook c;
  c.length = detail::parse_index(head[0], 1);
  const std::size_t count = detail::parse_index(head[1], 1);
  c.min_distance = detail::parse_index(head[2], 1);
  if (c.length == 0 || c.length > 63) throw ValidationError("code length must be in [1, 63]");
  if (lines.size() != count + 1) throw ValidationError("codebook word count mismatch");
  for (std::size_t i = 1; i <= count; ++i) {
    const auto tok = detail::split_ws(lines[i]);
    if (tok.size() != 1 || tok[0].size() != c.length) {
      throw ValidationError("line " + std::to_string(i + 1) + ": expected a word of length " +
                            std::to_string(c.length));
    }
    std::uint64_t w = 0;
    for (char ch : tok[0]) {
      if (ch != '0' && ch != '1') throw ValidationError("line " + std::to_string(i + 1) + ": non-binary symbol");
      w = (w << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    c.words.push_back(w);
  }
  return c;
}

// DissimilarSet text: one tree per line.
inline void write_dissimilar_set(std::ostream& out, const DissimilarSet& s) {
  for (const auto& t : s.trees) write_tree(out, t);
}

inline std::vector<SpanningTree> read_trees(std::istream& in, const Graph& g) {
  std::vector<SpanningTree> out;
  const auto lines = detail::read_lines(in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<EdgeId> ids;
    for (auto tok : detail::split_ws(lines[i])) ids.push_back(detail::parse_index(tok, i + 1));
    out.push_back(SpanningTree::of(g, std::move(ids)));
  }
  return out;
}

// RFC 4180 field quoting.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace dpmst::io
