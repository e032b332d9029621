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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestnet/graph.hpp"

namespace nestnet {

// Hamiltonian cycle 0..n-1 plus chords i -> i + shifts[i % shifts.size()].
inline Graph lcf_graph(int n, const std::vector<int>& shifts, std::string name) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) {
    const int j = ((i + shifts[i % shifts.size()]) % n + n) % n;
    if (i < j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges, std::move(name));
}

inline Graph petersen() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph::from_edges(10, edges, "petersen");
}

inline Graph heawood() { return lcf_graph(14, {5, -5}, "heawood"); }

inline Graph levi() {
  return lcf_graph(30, {-13, -9, 7, -7, 9, 13}, "levi");
}

inline Graph complete(int m) {
  if (m < 2 || m > 16) throw GraphError("complete(m) requires 2 <= m <= 16");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(m, edges, "complete(" + std::to_string(m) + ")");
}

inline Graph cycle(int m) {
  if (m < 3 || m > 16) throw GraphError("cycle(m) requires 3 <= m <= 16");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i) edges.emplace_back(i, (i + 1) % m);
  return Graph::from_edges(m, edges, "cycle(" + std::to_string(m) + ")");
}

// Binary m-cube: vertices are bit labels, edges flip one bit.
inline Graph hypercube(int m) {
  if (m < 2 || m > 16) throw GraphError("hypercube(m) requires 2 <= m <= 16");
  const int n = 1 << m;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int b = 0; b < m; ++b)
      if (u < (u ^ (1 << b))) edges.emplace_back(u, u ^ (1 << b));
  return Graph::from_edges(n, edges, "hypercube(" + std::to_string(m) + ")");
}

// Canonical graphs by name. Parametric families take m; the fixed graphs
// reject one.
inline Graph named_graph(const std::string& name, std::optional<int> m = {}) {
  const bool parametric = name == "hypercube" || name == "complete" || name == "cycle";
  if (parametric && !m)
    throw GraphError("graph family '" + name + "' needs a size parameter m");
  if (!parametric && m)
    throw GraphError("graph '" + name + "' does not take a size parameter");
  if (name == "petersen") return petersen();
  if (name == "heawood") return heawood();
  if (name == "levi") return levi();
  if (name == "hypercube") return hypercube(*m);
  if (name == "complete") return complete(*m);
  if (name == "cycle") return cycle(*m);
  throw GraphError("unknown graph name '" + name +
                   "' (expected petersen, heawood, levi, hypercube, complete "
                   "or cycle)");
}

}  // namespace nestnet
