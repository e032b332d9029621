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

#include <cstdint>
#include <vector>

#include "nestnet/bisection.hpp"
#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"

namespace nestnet {

struct DistanceStats {
  std::int64_t total = 0;  // sum of distances over ordered pairs
  int eccentricity_max = 0;
};

// One BFS per source; per-source partials are reduced in index order so the
// result is independent of the thread count.
inline DistanceStats all_pairs_distance_stats(const Graph& g, int threads = 1) {
  std::vector<std::int64_t> totals(g.n, 0);
  std::vector<int> ecc(g.n, 0);
  parallel_for(g.n, threads, [&](std::size_t s) {
    const auto dist = bfs_distances(g, static_cast<int>(s));
    std::int64_t sum = 0;
    int e = 0;
    for (int d : dist) {
      sum += d;
      e = std::max(e, d);
    }
    totals[s] = sum;
    ecc[s] = e;
  });
  DistanceStats stats;
  for (int s = 0; s < g.n; ++s) {
    stats.total += totals[s];
    stats.eccentricity_max = std::max(stats.eccentricity_max, ecc[s]);
  }
  return stats;
}

inline int diameter(const Graph& g, int threads = 1) {
  return all_pairs_distance_stats(g, threads).eccentricity_max;
}

// Mean shortest-path length over unordered distinct vertex pairs, exact.
inline Rational mean_path_length(const Graph& g, int threads = 1) {
  if (g.n < 2) throw GraphError("mean path length needs at least two vertices");
  const auto stats = all_pairs_distance_stats(g, threads);
  const std::int64_t pairs =
      static_cast<std::int64_t>(g.n) * (g.n - 1) / 2;
  return Rational(stats.total / 2, pairs);
}

struct GraphMetrics {
  int diameter = 0;
  Rational mpl;
  int bisection_width = 0;
  bool bisection_exact = false;
};

inline GraphMetrics compute_metrics(const Graph& g,
                                    BisectionMode mode = BisectionMode::kAuto,
                                    std::uint64_t seed = 1, int threads = 1) {
  const auto stats = all_pairs_distance_stats(g, threads);
  const auto bw = bisection_width(g, mode, seed, 32, threads);
  GraphMetrics m;
  m.diameter = stats.eccentricity_max;
  m.mpl = Rational(stats.total / 2,
                   static_cast<std::int64_t>(g.n) * (g.n - 1) / 2);
  m.bisection_width = bw.width;
  m.bisection_exact = bw.exact;
  return m;
}

}  // namespace nestnet
