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

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestnet/common.hpp"

namespace nestnet {

// Undirected simple graph with vertices 0..n-1 and sorted neighbor lists.
// Instances are immutable after construction and safe to share across
// threads. Construction rejects self-loops, duplicate edges, out-of-range
// endpoints and (by default) disconnected graphs: every algorithm in this
// library assumes connectivity.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::string name;

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                          std::string name = "", bool require_connected = true);

  // Adopts an adjacency structure that is already simple, symmetric and
  // sorted. Used by builders that construct adjacency directly (products,
  // topology search); validation is the caller's responsibility.
  static Graph from_adjacency(std::vector<std::vector<int>> adj,
                              std::string name = "");

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& nb : adj) total += nb.size();
    return total / 2;
  }

  // Edges as (u,v) pairs with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < n; ++u)
      for (int v : adj[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // Degree k if the graph is k-regular, nullopt otherwise.
  std::optional<int> regular_degree() const {
    if (n == 0) return std::nullopt;
    const int k = degree(0);
    for (int v = 1; v < n; ++v)
      if (degree(v) != k) return std::nullopt;
    return k;
  }

  // Name is a label, not part of graph identity.
  bool operator==(const Graph& other) const {
    return n == other.n && adj == other.adj;
  }
};

// BFS hop distances from src; all vertices reachable by precondition.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.n, -1);
  std::vector<int> queue;
  queue.reserve(g.n);
  dist[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// Returns nullopt if connected, otherwise representatives of two distinct
// components (the BFS root and the first unreached vertex).
inline std::optional<std::pair<int, int>> connectivity_witness(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return std::nullopt;
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int v : adj[queue[head]])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) return std::make_pair(0, v);
  return std::nullopt;
}

inline bool is_connected(const Graph& g) {
  return !connectivity_witness(g.adj).has_value();
}

inline Graph Graph::from_edges(int n,
                               const std::vector<std::pair<int, int>>& edges,
                               std::string name, bool require_connected) {
  if (n <= 0) throw GraphError("graph needs at least one vertex");
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for n=" + std::to_string(n));
    if (u == v)
      throw GraphError("self-loop at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& nb = adj[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw GraphError("duplicate edge at vertex " + std::to_string(v));
  }
  if (require_connected) {
    if (auto w = connectivity_witness(adj)) {
      throw GraphError("graph is disconnected: vertices " +
                       std::to_string(w->first) + " and " +
                       std::to_string(w->second) +
                       " lie in different components");
    }
  }
  Graph g;
  g.n = n;
  g.adj = std::move(adj);
  g.name = std::move(name);
  return g;
}

inline Graph Graph::from_adjacency(std::vector<std::vector<int>> adj,
                                   std::string name) {
  Graph g;
  g.n = static_cast<int>(adj.size());
  g.adj = std::move(adj);
  g.name = std::move(name);
  return g;
}

}  // namespace nestnet
