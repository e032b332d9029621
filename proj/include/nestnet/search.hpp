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

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"
#include "nestnet/metrics.hpp"

namespace nestnet {

// Best-possible mean distance to the n-1 other vertices of a degree-k graph:
// k vertices at distance 1, up to k(k-1) at distance 2, and so on, remainder
// at the last level. A lower bound on the MPL of any (n,k) graph and the
// early-exit target of the topology search.
inline Rational moore_mpl_bound(int n, int k) {
  if (n < 2 || k < 2) throw Error("moore_mpl_bound requires n >= 2, k >= 2");
  std::int64_t remaining = n - 1, cap = k, total = 0;
  int d = 1;
  while (remaining > 0) {
    const std::int64_t take = std::min(cap, remaining);
    total += static_cast<std::int64_t>(d) * take;
    remaining -= take;
    cap *= (k - 1);
    ++d;
  }
  return Rational(total, n - 1);
}

// Depth at which the Moore ball of degree k first covers n vertices; a lower
// bound on the diameter of any (n,k) graph.
inline int moore_diameter_bound(int n, int k) {
  if (n < 2 || k < 2) throw Error("moore_diameter_bound requires n >= 2, k >= 2");
  std::int64_t covered = 1, cap = k;
  int d = 0;
  while (covered < n) {
    covered += cap;
    cap *= (k - 1);
    ++d;
  }
  return d;
}

namespace detail {

// Bitmask adjacency for n <= 64: one word per vertex plus an explicit edge
// list so degree-preserving swaps are O(1). This is the inner representation
// of the annealer; results are converted back to Graph at the end.
struct MaskGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;
  std::vector<std::pair<int, int>> edges;

  static MaskGraph from_graph(const Graph& g) {
    MaskGraph m;
    m.n = g.n;
    m.adj.assign(g.n, 0);
    for (int u = 0; u < g.n; ++u)
      for (int v : g.adj[u]) m.adj[u] |= 1ULL << v;
    m.edges = g.edges();
    return m;
  }

  Graph to_graph(std::string name = "") const {
    std::vector<std::vector<int>> lists(n);
    for (int u = 0; u < n; ++u) {
      std::uint64_t bits = adj[u];
      while (bits) {
        lists[u].push_back(std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
    return Graph::from_adjacency(std::move(lists), std::move(name));
  }

  bool has(int u, int v) const { return (adj[u] >> v) & 1ULL; }

  void add(int u, int v) {
    adj[u] |= 1ULL << v;
    adj[v] |= 1ULL << u;
  }

  void remove(int u, int v) {
    adj[u] &= ~(1ULL << v);
    adj[v] &= ~(1ULL << u);
  }
};

// Sum of BFS distances over ordered pairs via bit-parallel level expansion.
// Returns -1 if the graph is disconnected.
inline std::int64_t total_distance_ordered(const MaskGraph& g) {
  const std::uint64_t full =
      g.n == 64 ? ~0ULL : ((1ULL << g.n) - 1);
  std::int64_t total = 0;
  for (int s = 0; s < g.n; ++s) {
    std::uint64_t visited = 1ULL << s;
    std::uint64_t frontier = visited;
    int depth = 0;
    while (frontier) {
      std::uint64_t next = 0;
      std::uint64_t bits = frontier;
      while (bits) {
        next |= g.adj[std::countr_zero(bits)];
        bits &= bits - 1;
      }
      next &= ~visited;
      ++depth;
      total += static_cast<std::int64_t>(depth) * std::popcount(next);
      visited |= next;
      frontier = next;
    }
    if (visited != full) return -1;
  }
  return total;
}

}  // namespace detail

// Connected random k-regular graph from the stub-pairing model. Colliding
// pairs are repaired by re-matching against random partners before the whole
// pairing is rejected; disconnected outcomes are rejected outright.
inline Graph random_regular(int n, int k, std::uint64_t seed,
                            int max_tries = 2000) {
  if (k < 1 || k >= n) throw Error("random_regular requires 1 <= k < n");
  if ((static_cast<std::int64_t>(n) * k) % 2 != 0)
    throw Error("random_regular requires n*k even");
  Rng rng(seed);
  const int stubs_count = n * k;
  std::vector<int> stubs(stubs_count);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < k; ++i) stubs[v * k + i] = v;

  for (int attempt = 0; attempt < max_tries; ++attempt) {
    for (int i = stubs_count - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below_int(i + 1)]);
    auto pair_ok = [&](int a, int b, const detail::MaskGraph& m) {
      return a != b && !m.has(a, b);
    };
    detail::MaskGraph m;
    m.n = n;
    m.adj.assign(n, 0);
    bool failed = false;
    for (int i = 0; i < stubs_count; i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (!pair_ok(a, b, m)) {
        // Repair: swap this stub with the tail of a random earlier pair.
        bool fixed = false;
        for (int t = 0; i > 0 && t < 64 && !fixed; ++t) {
          const int j = 2 * rng.below_int(i / 2);
          const int c = stubs[j], d = stubs[j + 1];
          if (pair_ok(a, d, m) && pair_ok(c, b, m) && !(a == c && b == d)) {
            m.remove(c, d);
            std::swap(stubs[i + 1], stubs[j + 1]);
            m.add(c, stubs[j + 1]);
            b = stubs[i + 1];
            fixed = pair_ok(a, b, m);
          }
        }
        if (!fixed || !pair_ok(a, b, m)) {
          failed = true;
          break;
        }
      }
      m.add(a, b);
    }
    if (failed) continue;
    if (detail::total_distance_ordered(m) < 0) continue;  // disconnected
    return m.to_graph("random(" + std::to_string(n) + "," + std::to_string(k) +
                      ")");
  }
  throw Error("random_regular(" + std::to_string(n) + "," + std::to_string(k) +
              ") gave up after " + std::to_string(max_tries) +
              " attempts (seed " + std::to_string(seed) + ")");
}

// One degree-preserving rewiring: edges (a,b),(c,d) become (a,c),(b,d) or
// (a,d),(b,c). Draws are rejected until the move keeps the graph simple and
// connected.
inline Graph double_edge_swap(const Graph& g, Rng& rng, int max_tries = 1000) {
  auto m = detail::MaskGraph::from_graph(g);
  const int num_edges = static_cast<int>(m.edges.size());
  if (num_edges < 2) throw Error("double_edge_swap needs at least two edges");
  for (int t = 0; t < max_tries; ++t) {
    const int e1 = rng.below_int(num_edges);
    const int e2 = rng.below_int(num_edges);
    if (e1 == e2) continue;
    auto [a, b] = m.edges[e1];
    auto [c, d] = m.edges[e2];
    if (rng.below(2)) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) continue;
    if (m.has(a, c) || m.has(b, d)) continue;
    m.remove(a, b);
    m.remove(c, d);
    m.add(a, c);
    m.add(b, d);
    if (detail::total_distance_ordered(m) < 0) {
      m.remove(a, c);
      m.remove(b, d);
      m.add(a, b);
      m.add(c, d);
      continue;
    }
    m.edges[e1] = {std::min(a, c), std::max(a, c)};
    m.edges[e2] = {std::min(b, d), std::max(b, d)};
    return m.to_graph(g.name);
  }
  throw Error("double_edge_swap found no valid move after " +
              std::to_string(max_tries) + " tries");
}

struct AnnealSchedule {
  double initial_temp = 10.0;  // in units of unordered total-distance delta
  double decay = 0.999;
  int steps_per_temp = 64;
  double min_temp = 0.08;  // floor; the walk keeps moving at this temperature
};

struct SearchConfig {
  int n = 0;
  int k = 0;
  std::int64_t budget = 2'000'000;  // objective evaluations across restarts
  int restarts = 8;
  std::uint64_t seed = 1;
  AnnealSchedule schedule;
  int threads = 1;

  void validate() const {
    if (k < 2) throw Error("search requires degree k >= 2");
    if (k >= n) throw Error("search requires k < n");
    if ((static_cast<std::int64_t>(n) * k) % 2 != 0)
      throw Error("search requires n*k even");
    if (n > 64) throw Error("search supports n <= 64");
    if (budget <= 0) throw Error("search budget must be positive");
    if (restarts < 1) throw Error("search needs at least one restart");
  }
};

struct SearchResult {
  Graph graph;
  Rational mpl;
  int diameter = 0;
  std::int64_t evaluations_used = 0;
  bool hit_lower_bound = false;
};

// Called whenever a restart improves its best total distance (unordered),
// with the evaluations spent so far in that restart.
using SearchTrace =
    std::function<void(int restart, std::int64_t evals, std::int64_t best_total)>;

namespace detail {

struct RestartOutcome {
  std::vector<std::uint64_t> best_adj;
  std::int64_t best_total = -1;  // ordered-pair total
  std::int64_t evals = 0;
};

inline RestartOutcome anneal_restart(const SearchConfig& cfg, int restart,
                                     std::int64_t eval_budget,
                                     std::int64_t target_total,
                                     const SearchTrace& trace) {
  const std::uint64_t restart_seed =
      cfg.seed ^ static_cast<std::uint64_t>(restart);
  Rng rng(splitmix64(restart_seed) ^ 0x5bf0f1ea5u);
  RestartOutcome out;

  Graph start = random_regular(cfg.n, cfg.k, restart_seed);
  auto m = MaskGraph::from_graph(start);
  std::int64_t cur = total_distance_ordered(m);
  out.evals = 1;
  out.best_total = cur;
  out.best_adj = m.adj;
  if (trace) trace(restart, out.evals, cur / 2);

  const int num_edges = static_cast<int>(m.edges.size());
  double temp = cfg.schedule.initial_temp;
  int steps_at_temp = 0;
  int barren_draws = 0;  // moves rejected before costing an evaluation

  while (out.evals < eval_budget && out.best_total > target_total &&
         barren_draws < 100000) {
    const int e1 = rng.below_int(num_edges);
    const int e2 = rng.below_int(num_edges);
    const bool flip = rng.below(2) != 0;
    const double coin = rng.unit();  // drawn unconditionally: stable stream
    if (++steps_at_temp >= cfg.schedule.steps_per_temp) {
      steps_at_temp = 0;
      temp = std::max(temp * cfg.schedule.decay, cfg.schedule.min_temp);
    }
    ++barren_draws;
    if (e1 == e2) continue;
    auto [a, b] = m.edges[e1];
    auto [c, d] = m.edges[e2];
    if (flip) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) continue;
    if (m.has(a, c) || m.has(b, d)) continue;
    barren_draws = 0;

    m.remove(a, b);
    m.remove(c, d);
    m.add(a, c);
    m.add(b, d);
    const std::int64_t cand = total_distance_ordered(m);
    ++out.evals;

    bool accept = false;
    if (cand >= 0) {
      const std::int64_t delta_unordered = (cand - cur) / 2;
      accept = delta_unordered <= 0 ||
               coin < std::exp(-static_cast<double>(delta_unordered) / temp);
    }
    if (accept) {
      cur = cand;
      m.edges[e1] = {std::min(a, c), std::max(a, c)};
      m.edges[e2] = {std::min(b, d), std::max(b, d)};
      if (cur < out.best_total) {
        out.best_total = cur;
        out.best_adj = m.adj;
        if (trace) trace(restart, out.evals, cur / 2);
      }
    } else {
      m.remove(a, c);
      m.remove(b, d);
      m.add(a, b);
      m.add(c, d);
    }
  }
  return out;
}

}  // namespace detail

// Simulated annealing over double edge swaps minimizing exact MPL, with
// deterministic restart merging (best total, then lowest restart index).
// Stops early once the Moore fill bound is attained.
inline SearchResult search_optimal(const SearchConfig& cfg,
                                   const SearchTrace& trace = nullptr) {
  cfg.validate();
  const Rational bound = moore_mpl_bound(cfg.n, cfg.k);
  // Smallest achievable ordered total >= bound (integer totals only).
  const Rational bound_total_ordered =
      bound * Rational(static_cast<std::int64_t>(cfg.n) * (cfg.n - 1));
  std::int64_t target = bound_total_ordered.numerator() /
                        bound_total_ordered.denominator();
  if (target * bound_total_ordered.denominator() !=
      bound_total_ordered.numerator())
    ++target;  // bound not an integer total; round up
  if (target % 2 != 0) ++target;  // ordered totals are even

  std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
  const std::int64_t base = cfg.budget / cfg.restarts;
  const std::int64_t extra = cfg.budget % cfg.restarts;
  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
    const std::int64_t share = base + (static_cast<std::int64_t>(r) < extra);
    outcomes[r] = detail::anneal_restart(cfg, static_cast<int>(r),
                                         std::max<std::int64_t>(share, 1),
                                         target, trace);
  });

  int winner = 0;
  std::int64_t evals = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    evals += outcomes[r].evals;
    if (outcomes[r].best_total < outcomes[winner].best_total) winner = r;
  }

  detail::MaskGraph best;
  best.n = cfg.n;
  best.adj = outcomes[winner].best_adj;
  SearchResult result;
  result.graph = best.to_graph("searched(" + std::to_string(cfg.n) + "," +
                               std::to_string(cfg.k) + ")");
  result.mpl = Rational(outcomes[winner].best_total,
                        static_cast<std::int64_t>(cfg.n) * (cfg.n - 1));
  result.diameter = diameter(result.graph);
  result.evaluations_used = evals;
  result.hit_lower_bound = (result.mpl == bound);
  return result;
}

}  // namespace nestnet
