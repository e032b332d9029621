// Copyright 2026 The nestnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "nestnet/graph.hpp"

namespace nestnet {

// Edge-list text format:
//   line 1:  "N K"      K = degree if regular, -1 otherwise
//   then     "u v"      one edge per line, u < v, sorted lexicographically
// Lines starting with '#' are ignored. Every line is LF terminated.
// Writers emit the canonical form; the loader also accepts reversed or
// unsorted edge lines and normalizes (a pair listed in both orientations is
// a duplicate edge).

inline std::string save_graph(const Graph& g) {
  std::ostringstream os;
  const auto k = g.regular_degree();
  os << g.n << ' ' << (k ? *k : -1) << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph load_graph(const std::string& text, std::string name = "") {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  int n = -1, declared_k = -1;
  std::vector<std::pair<int, int>> edges;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long a, b;
    std::string trailing;
    if (!(ls >> a >> b) || (ls >> trailing))
      throw ParseError(lineno, "expected two integers, got '" + line + "'");
    if (!have_header) {
      if (a < 1) throw ParseError(lineno, "vertex count must be positive");
      if (b < -1) throw ParseError(lineno, "degree must be >= -1");
      n = static_cast<int>(a);
      declared_k = static_cast<int>(b);
      have_header = true;
      continue;
    }
    if (a == b) throw ParseError(lineno, "self-loop '" + line + "'");
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n)
      throw ParseError(lineno, "edge '" + line + "' out of range for n=" +
                                   std::to_string(n));
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (!have_header) throw ParseError(lineno, "missing 'N K' header line");
  Graph g = Graph::from_edges(n, edges, std::move(name));
  if (declared_k >= 0) {
    for (int v = 0; v < g.n; ++v)
      if (g.degree(v) != declared_k)
        throw ParseError(1, "header declares degree " +
                                std::to_string(declared_k) + " but vertex " +
                                std::to_string(v) + " has degree " +
                                std::to_string(g.degree(v)));
  }
  return g;
}

}  // namespace nestnet
