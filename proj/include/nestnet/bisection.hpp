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
#include <numeric>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"

namespace nestnet {

enum class BisectionMode { kAuto, kExact, kHeuristic };

struct BisectionResult {
  int width = 0;
  bool exact = false;  // false: Kernighan-Lin upper bound
};

namespace detail {

constexpr int kExactBisectionLimit = 28;  // C(27,13) ~ 2e7 subsets
constexpr int kAutoExactThreshold = 20;

// Minimum cut over balanced partitions by subset enumeration. For even n the
// side containing vertex 0 is canonical, which halves the work.
inline int bisection_exact(const Graph& g) {
  const int n = g.n;
  std::vector<std::uint32_t> adj_mask(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v : g.adj[u]) adj_mask[u] |= 1u << v;

  const bool pin0 = (n % 2 == 0);
  const int universe = pin0 ? n - 1 : n;          // vertices 1.. or 0..
  const int pick = n / 2 - (pin0 ? 1 : 0);        // side size minus pinned
  int best = std::numeric_limits<int>::max();
  if (pick == 0) {
    // n == 2: the single partition {0} / {1}.
    return g.degree(0);
  }
  std::uint32_t subset = (1u << pick) - 1;
  const std::uint32_t end = 1u << universe;
  while (subset < end) {
    const std::uint32_t side =
        pin0 ? ((subset << 1) | 1u) : subset;  // shift into 0-based ids
    int cut = 0;
    std::uint32_t rest = side;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      cut += std::popcount(adj_mask[v] & ~side);
    }
    best = std::min(best, cut);
    // Gosper's hack: next subset of equal popcount.
    const std::uint32_t c = subset & -subset;
    const std::uint32_t r = subset + c;
    subset = (((r ^ subset) >> 2) / c) | r;
  }
  return best;
}

inline int cut_size(const Graph& g, const std::vector<char>& in_a) {
  int cut = 0;
  for (int u = 0; u < g.n; ++u)
    if (in_a[u])
      for (int v : g.adj[u])
        if (!in_a[v]) ++cut;
  return cut;
}

// One Kernighan-Lin run from a seeded random balanced partition: repeated
// full passes of tentative locked swaps, keeping the best prefix.
inline int kl_run(const Graph& g, std::uint64_t seed) {
  const int n = g.n;
  Rng rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.below_int(i + 1)]);
  std::vector<char> in_a(n, 0);
  for (int i = 0; i < n / 2; ++i) in_a[order[i]] = 1;

  int cut = cut_size(g, in_a);
  std::vector<int> d(n);
  std::vector<char> locked(n);
  while (true) {
    for (int v = 0; v < n; ++v) {
      int internal = 0, external = 0;
      for (int u : g.adj[v]) (in_a[u] == in_a[v] ? internal : external)++;
      d[v] = external - internal;
      locked[v] = 0;
    }
    std::vector<std::pair<int, int>> swaps;
    std::vector<int> gains;
    int steps = n / 2;
    for (int step = 0; step < steps; ++step) {
      int best_gain = std::numeric_limits<int>::min(), ba = -1, bb = -1;
      for (int a = 0; a < n; ++a) {
        if (locked[a] || !in_a[a]) continue;
        for (int b = 0; b < n; ++b) {
          if (locked[b] || in_a[b]) continue;
          const int gain = d[a] + d[b] - 2 * (g.has_edge(a, b) ? 1 : 0);
          if (gain > best_gain) {
            best_gain = gain;
            ba = a;
            bb = b;
          }
        }
      }
      if (ba < 0) break;
      locked[ba] = locked[bb] = 1;
      in_a[ba] = 0;
      in_a[bb] = 1;
      for (int v = 0; v < n; ++v) {
        if (locked[v]) continue;
        int delta = 0;
        if (g.has_edge(v, ba)) delta += in_a[v] ? 2 : -2;
        if (g.has_edge(v, bb)) delta += in_a[v] ? -2 : 2;
        d[v] += delta;
      }
      swaps.emplace_back(ba, bb);
      gains.push_back(best_gain);
    }
    int best_prefix = 0, cum = 0, best_cum = 0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
      cum += gains[i];
      if (cum > best_cum) {
        best_cum = cum;
        best_prefix = static_cast<int>(i) + 1;
      }
    }
    // Undo everything past the best prefix.
    for (std::size_t i = gains.size(); i-- > static_cast<std::size_t>(best_prefix);) {
      in_a[swaps[i].first] = 1;
      in_a[swaps[i].second] = 0;
    }
    if (best_cum <= 0) break;
    cut -= best_cum;
  }
  return cut;
}

}  // namespace detail

// Minimum (or heuristically minimized) edge cut over partitions whose sizes
// differ by at most one. Auto mode enumerates exactly for n <= 20 and falls
// back to seeded Kernighan-Lin restarts above that; exact mode refuses n > 28.
inline BisectionResult bisection_width(const Graph& g,
                                       BisectionMode mode = BisectionMode::kAuto,
                                       std::uint64_t seed = 1,
                                       int restarts = 32, int threads = 1) {
  if (mode == BisectionMode::kAuto)
    mode = g.n <= detail::kAutoExactThreshold ? BisectionMode::kExact
                                              : BisectionMode::kHeuristic;
  if (mode == BisectionMode::kExact) {
    if (g.n > detail::kExactBisectionLimit)
      throw TooLarge("exact bisection enumerates C(n, n/2) subsets and is "
                     "limited to n <= " +
                     std::to_string(detail::kExactBisectionLimit) +
                     " (got n = " + std::to_string(g.n) +
                     "); use heuristic mode");
    return {detail::bisection_exact(g), true};
  }
  std::vector<int> cuts(restarts, std::numeric_limits<int>::max());
  parallel_for(restarts, threads, [&](std::size_t r) {
    cuts[r] = detail::kl_run(g, seed ^ static_cast<std::uint64_t>(r));
  });
  // Deterministic merge: min cut, earliest restart on ties.
  int best = cuts[0];
  for (int c : cuts) best = std::min(best, c);
  return {best, false};
}

}  // namespace nestnet
