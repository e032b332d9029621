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
#include <string>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"

namespace nestnet {

// Unordered demands identify {s,t} with s < t and one chosen path serves both
// directions; ordered demands treat (s,t) and (t,s) independently.
enum class DemandMode { kUnordered, kOrdered };

inline std::string to_string(DemandMode m) {
  return m == DemandMode::kUnordered ? "unordered" : "ordered";
}

inline DemandMode parse_demand_mode(const std::string& s) {
  if (s == "unordered") return DemandMode::kUnordered;
  if (s == "ordered") return DemandMode::kOrdered;
  throw Error("unknown demand mode '" + s + "'");
}

struct Demand {
  int src = 0;
  int dst = 0;
  bool operator==(const Demand&) const = default;
};

namespace detail {

// BFS predecessor DAG from src: preds[v] holds the neighbors of v that lie
// one hop closer to src, in ascending id order.
struct ShortestPathDag {
  std::vector<int> dist;
  std::vector<std::vector<int>> preds;
};

inline ShortestPathDag shortest_path_dag(const Graph& g, int src) {
  ShortestPathDag dag;
  dag.dist = bfs_distances(g, src);
  dag.preds.resize(g.n);
  for (int v = 0; v < g.n; ++v)
    for (int u : g.adj[v])
      if (dag.dist[u] == dag.dist[v] - 1) dag.preds[v].push_back(u);
  return dag;
}

// Number of shortest src->t paths, saturating at cap + 1.
inline long long count_paths(const ShortestPathDag& dag, int src, int t,
                             long long cap) {
  std::vector<int> order;
  for (int v = 0; v < static_cast<int>(dag.dist.size()); ++v)
    if (dag.dist[v] >= 0 && dag.dist[v] <= dag.dist[t]) order.push_back(v);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dag.dist[a] < dag.dist[b]; });
  std::vector<long long> cnt(dag.dist.size(), 0);
  cnt[src] = 1;
  for (int v : order) {
    if (v == src) continue;
    long long total = 0;
    for (int u : dag.preds[v]) {
      total += cnt[u];
      if (total > cap) {
        total = cap + 1;
        break;
      }
    }
    cnt[v] = total;
  }
  return cnt[t];
}

inline void enumerate_paths(const ShortestPathDag& dag, int src, int t,
                            std::vector<int>& suffix,
                            std::vector<std::vector<int>>& out) {
  suffix.push_back(t);
  if (t == src) {
    out.emplace_back(suffix.rbegin(), suffix.rend());
  } else {
    for (int u : dag.preds[t]) enumerate_paths(dag, src, u, suffix, out);
  }
  suffix.pop_back();
}

inline std::vector<std::vector<int>> paths_from_dag(const ShortestPathDag& dag,
                                                    int src, int t,
                                                    long long cap) {
  const long long count = count_paths(dag, src, t, cap);
  if (count > cap) throw PathExplosion(src, t, count, cap);
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> suffix;
  enumerate_paths(dag, src, t, suffix, out);
  return out;
}

}  // namespace detail

// All distinct shortest s-t paths, enumerated deterministically from the BFS
// predecessor DAG in ascending neighbor-id order. Throws PathExplosion when
// the count exceeds cap; truncation is never an option because dropped
// candidates would change the optimum.
inline std::vector<std::vector<int>> all_shortest_paths(const Graph& g, int s,
                                                        int t,
                                                        long long cap = 4096) {
  if (s == t) throw Error("all_shortest_paths requires s != t");
  if (cap < 1) throw Error("path cap must be >= 1");
  const auto dag = detail::shortest_path_dag(g, s);
  return detail::paths_from_dag(dag, s, t, cap);
}

// The path-selection data of the load-balancing program: one group per
// demand, each carrying its candidate shortest paths. Groups with a single
// candidate have no choice to make, so their interior hits are folded into
// the fixed per-node load h. The selectable paths of the free groups are the
// columns of the path-interior incidence (endpoints never count as interior).
struct RoutingModel {
  Graph graph;
  DemandMode mode = DemandMode::kUnordered;
  std::vector<Demand> demands;                           // lexicographic
  std::vector<std::vector<std::vector<int>>> candidates;  // per demand
  std::vector<std::int64_t> fixed_load;                  // h, from singletons
  std::vector<int> free_groups;  // demand indices with >= 2 candidates

  std::size_t num_groups() const { return demands.size(); }

  std::size_t num_paths() const {
    std::size_t j = 0;
    for (const auto& c : candidates) j += c.size();
    return j;
  }

  // Sum of interior counts of any full selection; equal across selections
  // because all candidates of a group share the same length.
  std::int64_t selected_interior_total() const {
    std::int64_t s = 0;
    for (const auto& c : candidates)
      s += static_cast<std::int64_t>(c.front().size()) - 2;
    return s;
  }
};

// One selected candidate per group, indexed into candidates[m]; singleton
// groups are pinned at 0.
using Selection = std::vector<int>;

struct LoadProfile {
  std::vector<std::int64_t> d;
  std::int64_t sum_squares = 0;
  Rational objective;  // sum over nodes of (d_n - mean)^2, exact
};

inline RoutingModel build_model(const Graph& g,
                                DemandMode mode = DemandMode::kUnordered,
                                long long cap = 4096, int threads = 1) {
  RoutingModel model;
  model.graph = g;
  model.mode = mode;

  // Candidate enumeration per source, parallel over sources, assembled in
  // lexicographic demand order afterwards.
  std::vector<std::vector<std::vector<std::vector<int>>>> by_src(g.n);
  std::vector<std::string> failures(g.n);
  parallel_for(g.n, threads, [&](std::size_t s) {
    const int src = static_cast<int>(s);
    const auto dag = detail::shortest_path_dag(g, src);
    auto& rows = by_src[src];
    rows.resize(g.n);
    try {
      for (int t = 0; t < g.n; ++t) {
        if (t == src) continue;
        if (mode == DemandMode::kUnordered && t < src) continue;
        rows[t] = detail::paths_from_dag(dag, src, t, cap);
      }
    } catch (const PathExplosion& e) {
      failures[src] = e.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw Error(f);

  model.fixed_load.assign(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    for (int t = 0; t < g.n; ++t) {
      auto& paths = by_src[s][t];
      if (paths.empty()) continue;
      const int m = static_cast<int>(model.demands.size());
      model.demands.push_back({s, t});
      if (paths.size() == 1) {
        const auto& p = paths.front();
        for (std::size_t i = 1; i + 1 < p.size(); ++i)
          ++model.fixed_load[p[i]];
      } else {
        model.free_groups.push_back(m);
      }
      model.candidates.push_back(std::move(paths));
    }
  }
  return model;
}

inline Rational objective_of_loads(const std::vector<std::int64_t>& d) {
  const std::int64_t n = static_cast<std::int64_t>(d.size());
  std::int64_t sum = 0, sum_sq = 0;
  for (std::int64_t v : d) {
    sum += v;
    sum_sq += v * v;
  }
  return Rational(n * sum_sq - sum * sum, n);
}

inline LoadProfile load_profile(const RoutingModel& model,
                                const Selection& selection) {
  if (selection.size() != model.num_groups())
    throw Error("selection has " + std::to_string(selection.size()) +
                " entries for " + std::to_string(model.num_groups()) +
                " groups");
  LoadProfile profile;
  profile.d = model.fixed_load;
  for (std::size_t m = 0; m < model.num_groups(); ++m) {
    const auto& cands = model.candidates[m];
    const int choice = selection[m];
    if (choice < 0 || choice >= static_cast<int>(cands.size()))
      throw Error("selection for group " + std::to_string(m) +
                  " out of range");
    if (cands.size() == 1) continue;  // already folded into fixed_load
    const auto& p = cands[choice];
    for (std::size_t i = 1; i + 1 < p.size(); ++i) ++profile.d[p[i]];
  }
  for (std::int64_t v : profile.d) profile.sum_squares += v * v;
  profile.objective = objective_of_loads(profile.d);
  return profile;
}

inline Rational objective(const RoutingModel& model, const Selection& sel) {
  return load_profile(model, sel).objective;
}

}  // namespace nestnet
