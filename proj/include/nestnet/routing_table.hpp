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
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"
#include "nestnet/routing_model.hpp"

namespace nestnet {

struct Route {
  int src = 0;
  int dst = 0;
  std::vector<int> path;  // path.front() == src, path.back() == dst
};

// Full-path (source-routed) table with one route per demand, sorted by
// (src, dst). An unordered table stores the canonical src < dst direction
// and serves the opposite direction with the reversed path.
struct RoutingTable {
  DemandMode mode = DemandMode::kUnordered;
  int n = 0;
  std::vector<Route> routes;

  const Route& route_at(int s, int t) const {
    int cs = s, ct = t;
    if (mode == DemandMode::kUnordered && cs > ct) std::swap(cs, ct);
    auto it = std::lower_bound(
        routes.begin(), routes.end(), std::make_pair(cs, ct),
        [](const Route& r, const std::pair<int, int>& key) {
          return std::make_pair(r.src, r.dst) < key;
        });
    if (it == routes.end() || it->src != cs || it->dst != ct)
      throw Error("no route for demand (" + std::to_string(s) + "," +
                  std::to_string(t) + ")");
    return *it;
  }

  // Materialized path s -> t (reversed copy for the mirrored direction of an
  // unordered demand).
  std::vector<int> path(int s, int t) const {
    const Route& r = route_at(s, t);
    std::vector<int> p = r.path;
    if (r.src != s) std::reverse(p.begin(), p.end());
    return p;
  }

  // Next hop out of `at` for traffic s -> t.
  int next_hop(int s, int t, int at) const {
    const auto p = path(s, t);
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i] == at) return p[i + 1];
    throw Error("node " + std::to_string(at) + " not on route (" +
                std::to_string(s) + "," + std::to_string(t) + ")");
  }

  std::size_t expected_route_count() const {
    const std::int64_t n64 = n;
    return static_cast<std::size_t>(mode == DemandMode::kUnordered
                                        ? n64 * (n64 - 1) / 2
                                        : n64 * (n64 - 1));
  }
};

inline RoutingTable make_table(const RoutingModel& model,
                               const Selection& selection) {
  if (selection.size() != model.num_groups())
    throw Error("selection size does not match model");
  RoutingTable table;
  table.mode = model.mode;
  table.n = model.graph.n;
  table.routes.reserve(model.num_groups());
  for (std::size_t m = 0; m < model.num_groups(); ++m) {
    const auto& cands = model.candidates[m];
    const int c = selection[m];
    if (c < 0 || c >= static_cast<int>(cands.size()))
      throw Error("selection for group " + std::to_string(m) + " out of range");
    table.routes.push_back(
        {model.demands[m].src, model.demands[m].dst, cands[c]});
  }
  return table;
}

// Expands an unordered table to ordered mode: the mirrored direction gets the
// reversed path. Per-node interior loads exactly double, so a zero-variance
// table stays zero-variance.
inline RoutingTable to_ordered(const RoutingTable& table) {
  if (table.mode == DemandMode::kOrdered) return table;
  RoutingTable out;
  out.mode = DemandMode::kOrdered;
  out.n = table.n;
  out.routes.reserve(table.routes.size() * 2);
  for (const Route& r : table.routes) {
    out.routes.push_back(r);
    Route rev;
    rev.src = r.dst;
    rev.dst = r.src;
    rev.path.assign(r.path.rbegin(), r.path.rend());
    out.routes.push_back(std::move(rev));
  }
  std::sort(out.routes.begin(), out.routes.end(),
            [](const Route& a, const Route& b) {
              return std::make_pair(a.src, a.dst) < std::make_pair(b.src, b.dst);
            });
  return out;
}

// Deterministic single-shortest-path baseline: Floyd-Warshall with k
// ascending and strict-improvement updates only, next hop seeded by the
// direct edge. No balancing; this is the comparison routing.
inline RoutingTable floyd_routing(const Graph& g,
                                  DemandMode mode = DemandMode::kUnordered) {
  const int n = g.n;
  const int inf = std::numeric_limits<int>::max() / 2;
  std::vector<int> dist(static_cast<std::size_t>(n) * n, inf);
  std::vector<int> next(static_cast<std::size_t>(n) * n, -1);
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
  for (int i = 0; i < n; ++i) {
    dist[at(i, i)] = 0;
    for (int j : g.adj[i]) {
      dist[at(i, j)] = 1;
      next[at(i, j)] = j;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const int dik = dist[at(i, k)];
      if (dik == inf) continue;
      for (int j = 0; j < n; ++j) {
        if (dik + dist[at(k, j)] < dist[at(i, j)]) {
          dist[at(i, j)] = dik + dist[at(k, j)];
          next[at(i, j)] = next[at(i, k)];
        }
      }
    }

  RoutingTable table;
  table.mode = mode;
  table.n = n;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || (mode == DemandMode::kUnordered && t < s)) continue;
      Route r;
      r.src = s;
      r.dst = t;
      for (int v = s; v != t; v = next[at(v, t)]) r.path.push_back(v);
      r.path.push_back(t);
      table.routes.push_back(std::move(r));
    }
  return table;
}

// Per-node interior hit counts of the stored routes (one hit per route that
// passes strictly through the node).
inline std::vector<std::int64_t> interior_loads(const RoutingTable& table) {
  std::vector<std::int64_t> d(table.n, 0);
  for (const Route& r : table.routes)
    for (std::size_t i = 1; i + 1 < r.path.size(); ++i) ++d[r.path[i]];
  return d;
}

inline Rational table_objective(const RoutingTable& table) {
  return objective_of_loads(interior_loads(table));
}

// Text format: header "ROUTES <mode> <N> <num_demands>", then per demand
// "src dst len v0 v1 ... v_len" sorted by (src, dst). '#' lines before the
// header are ignored so artifacts can carry provenance comments.
inline std::string save_table(const RoutingTable& table) {
  std::ostringstream os;
  os << "ROUTES " << to_string(table.mode) << ' ' << table.n << ' '
     << table.routes.size() << '\n';
  for (const Route& r : table.routes) {
    os << r.src << ' ' << r.dst << ' ' << (r.path.size() - 1);
    for (int v : r.path) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

// Parses and fully validates a table against its graph: consecutive vertices
// must be adjacent, every path must be shortest, and the demand set must be
// complete for the declared mode.
inline RoutingTable load_table(const std::string& text, const Graph& g) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  RoutingTable table;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag, mode;
      int n = 0;
      std::size_t count = 0;
      if (!(ls >> tag >> mode >> n >> count) || tag != "ROUTES")
        throw ParseError(lineno, "expected 'ROUTES <mode> <N> <count>' header");
      table.mode = parse_demand_mode(mode);
      table.n = n;
      if (n != g.n)
        throw ParseError(lineno, "table is for " + std::to_string(n) +
                                     " vertices, graph has " +
                                     std::to_string(g.n));
      table.routes.reserve(count);
      have_header = true;
      continue;
    }
    Route r;
    int len = 0;
    if (!(ls >> r.src >> r.dst >> len) || len < 1)
      throw ParseError(lineno, "malformed route line");
    r.path.resize(len + 1);
    for (int& v : r.path)
      if (!(ls >> v) || v < 0 || v >= g.n)
        throw ParseError(lineno, "route vertices malformed or out of range");
    std::string trailing;
    if (ls >> trailing) throw ParseError(lineno, "trailing tokens on route line");
    if (r.path.front() != r.src || r.path.back() != r.dst)
      throw ParseError(lineno, "path endpoints disagree with demand");
    for (std::size_t i = 0; i + 1 < r.path.size(); ++i)
      if (!g.has_edge(r.path[i], r.path[i + 1]))
        throw ParseError(lineno, "vertices " + std::to_string(r.path[i]) +
                                     " and " + std::to_string(r.path[i + 1]) +
                                     " are not adjacent");
    table.routes.push_back(std::move(r));
  }
  if (!have_header) throw ParseError(lineno, "missing ROUTES header");

  if (table.routes.size() != table.expected_route_count())
    throw Error("table has " + std::to_string(table.routes.size()) +
                " routes, expected " +
                std::to_string(table.expected_route_count()) +
                " for mode " + to_string(table.mode));
  if (!std::is_sorted(table.routes.begin(), table.routes.end(),
                      [](const Route& a, const Route& b) {
                        return std::make_pair(a.src, a.dst) <
                               std::make_pair(b.src, b.dst);
                      }))
    throw Error("routes are not sorted by (src, dst)");
  for (std::size_t i = 0; i + 1 < table.routes.size(); ++i)
    if (table.routes[i].src == table.routes[i + 1].src &&
        table.routes[i].dst == table.routes[i + 1].dst)
      throw Error("duplicate route for (" + std::to_string(table.routes[i].src) +
                  "," + std::to_string(table.routes[i].dst) + ")");

  // Shortest-path validation, one BFS per distinct source.
  std::vector<int> dist;
  int dist_src = -1;
  for (const Route& r : table.routes) {
    if (r.src != dist_src) {
      dist = bfs_distances(g, r.src);
      dist_src = r.src;
    }
    if (static_cast<int>(r.path.size()) - 1 != dist[r.dst])
      throw Error("route (" + std::to_string(r.src) + "," +
                  std::to_string(r.dst) + ") has length " +
                  std::to_string(r.path.size() - 1) +
                  ", shortest distance is " + std::to_string(dist[r.dst]));
  }
  // Sorted + deduplicated + correct count implies every demand is present.
  for (const Route& r : table.routes) {
    if (r.src == r.dst) throw Error("self-demand in table");
    if (table.mode == DemandMode::kUnordered && r.src > r.dst)
      throw Error("unordered table must store src < dst");
  }
  return table;
}

}  // namespace nestnet
