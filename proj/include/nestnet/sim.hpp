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
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"
#include "nestnet/metrics.hpp"
#include "nestnet/routing_table.hpp"

namespace nestnet {

// Fluid-flow traffic model under uniform all-to-all demand. Defaults model a
// full-duplex gigabit link (bytes/s) with 30 us per-hop latency.
struct TrafficSpec {
  double flow = 1.0;                  // units per demand
  double link_capacity = 1.25e8;      // units per second per direction
  double per_hop_latency = 30e-6;     // seconds
};

namespace detail {

// Dense id space for directed edges: position of v in adj[u], offset by the
// number of directed edges out of lower-numbered vertices.
struct DirectedEdgeIndex {
  std::vector<std::size_t> offset;
  const Graph* g;

  explicit DirectedEdgeIndex(const Graph& graph) : g(&graph) {
    offset.resize(graph.n + 1, 0);
    for (int u = 0; u < graph.n; ++u)
      offset[u + 1] = offset[u] + graph.adj[u].size();
  }

  std::size_t count() const { return offset.back(); }

  std::size_t id(int u, int v) const {
    const auto& nb = g->adj[u];
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v)
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") is not in the graph");
    return offset[u] + static_cast<std::size_t>(it - nb.begin());
  }

  std::pair<int, int> endpoints(std::size_t id) const {
    const int u = static_cast<int>(
        std::upper_bound(offset.begin(), offset.end(), id) - offset.begin() -
        1);
    return {u, g->adj[u][id - offset[u]]};
  }
};

inline void check_table(const RoutingTable& table, const Graph& g) {
  if (table.n != g.n)
    throw Error("table covers " + std::to_string(table.n) +
                " vertices, graph has " + std::to_string(g.n));
}

}  // namespace detail

// Forwarded flow per node: demands whose path passes strictly through it.
// Unordered demands count once per pair; both directions share the node set.
inline std::vector<double> node_loads(const RoutingTable& table,
                                      const Graph& g, const TrafficSpec& spec) {
  detail::check_table(table, g);
  std::vector<double> load(g.n, 0.0);
  for (const Route& r : table.routes)
    for (std::size_t i = 1; i + 1 < r.path.size(); ++i)
      load[r.path[i]] += spec.flow;
  return load;
}

// Flow per directed edge. Unordered demands are expanded to both directions
// so that loads are meaningful on full-duplex links.
inline std::vector<double> link_loads(const RoutingTable& table,
                                      const Graph& g, const TrafficSpec& spec) {
  detail::check_table(table, g);
  detail::DirectedEdgeIndex index(g);
  std::vector<double> load(index.count(), 0.0);
  for (const Route& r : table.routes)
    for (std::size_t i = 0; i + 1 < r.path.size(); ++i) {
      load[index.id(r.path[i], r.path[i + 1])] += spec.flow;
      if (table.mode == DemandMode::kUnordered)
        load[index.id(r.path[i + 1], r.path[i])] += spec.flow;
    }
  return load;
}

// Injection rate per node at which the hottest link saturates. When no link
// carries more than a single demand's flow the network is capacity-bound and
// the routing cannot be the bottleneck.
inline double saturation_throughput(const RoutingTable& table, const Graph& g,
                                    const TrafficSpec& spec) {
  const auto loads = link_loads(table, g, spec);
  const double max_link = loads.empty() ? 0.0
                                        : *std::max_element(loads.begin(),
                                                            loads.end());
  if (max_link <= 0.0) return std::numeric_limits<double>::infinity();
  return spec.link_capacity * (g.n - 1) * spec.flow / max_link;
}

// Alpha-beta style proxy for a full message exchange:
//   T = max_link_demands * message_size / capacity + diameter * latency.
// A trend indicator, not an absolute prediction.
inline double alltoall_estimate(const RoutingTable& table, const Graph& g,
                                const TrafficSpec& spec, double message_size) {
  TrafficSpec unit = spec;
  unit.flow = 1.0;
  const auto loads = link_loads(table, g, unit);
  const double max_link = loads.empty() ? 0.0
                                        : *std::max_element(loads.begin(),
                                                            loads.end());
  return max_link * message_size / spec.link_capacity +
         static_cast<double>(diameter(g)) * spec.per_hop_latency;
}

struct LoadSummary {
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

inline LoadSummary summarize(const std::vector<double>& values) {
  LoadSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) {
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

struct SimReport {
  std::vector<double> node_load;
  std::vector<double> link_load;
  LoadSummary node;
  LoadSummary link;
  Rational objective;          // variance-sum of interior counts
  double saturation = 0.0;     // units/time per node
  bool capacity_bound = false;
  double alltoall_time = 0.0;  // seconds, at the given message size
};

inline SimReport simulate(const RoutingTable& table, const Graph& g,
                          const TrafficSpec& spec,
                          double message_size = 512.0 * 1024) {
  SimReport r;
  r.node_load = node_loads(table, g, spec);
  r.link_load = link_loads(table, g, spec);
  r.node = summarize(r.node_load);
  r.link = summarize(r.link_load);
  r.objective = table_objective(table);
  r.saturation = saturation_throughput(table, g, spec);
  r.capacity_bound = r.link.max <= spec.flow;
  r.alltoall_time = alltoall_estimate(table, g, spec, message_size);
  return r;
}

struct Comparison {
  SimReport a, b;
  std::string label_a = "a", label_b = "b";
};

// Side-by-side run of two tables over the same graph and traffic.
inline Comparison compare_report(const RoutingTable& table_a,
                                 const RoutingTable& table_b, const Graph& g,
                                 const TrafficSpec& spec,
                                 double message_size = 512.0 * 1024,
                                 std::string label_a = "a",
                                 std::string label_b = "b") {
  detail::check_table(table_a, g);
  detail::check_table(table_b, g);
  Comparison c;
  c.a = simulate(table_a, g, spec, message_size);
  c.b = simulate(table_b, g, spec, message_size);
  c.label_a = std::move(label_a);
  c.label_b = std::move(label_b);
  return c;
}

namespace detail {

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << v;
  std::string s = os.str();
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace detail

// Aligned plain-text comparison; lower is better except for throughput.
inline std::string render_comparison(const Comparison& c) {
  struct Row {
    std::string metric;
    double a, b;
    bool higher_better;
  };
  const std::vector<Row> rows = {
      {"max_node_load", c.a.node.max, c.b.node.max, false},
      {"mean_node_load", c.a.node.mean, c.b.node.mean, false},
      {"stddev_node_load", c.a.node.stddev, c.b.node.stddev, false},
      {"max_link_load", c.a.link.max, c.b.link.max, false},
      {"mean_link_load", c.a.link.mean, c.b.link.mean, false},
      {"objective", to_double(c.a.objective), to_double(c.b.objective), false},
      {"saturation_throughput", c.a.saturation, c.b.saturation, true},
      {"alltoall_estimate", c.a.alltoall_time, c.b.alltoall_time, false},
  };
  std::ostringstream os;
  os << std::left << std::setw(24) << "metric" << std::right << std::setw(18)
     << c.label_a << std::setw(18) << c.label_b << std::setw(10) << "winner"
     << '\n';
  for (const auto& row : rows) {
    std::string winner = "tie";
    if (row.a != row.b)
      winner = (row.higher_better == (row.a > row.b)) ? c.label_a : c.label_b;
    os << std::left << std::setw(24) << row.metric << std::right
       << std::setw(18) << detail::format_double(row.a) << std::setw(18)
       << detail::format_double(row.b) << std::setw(10) << winner << '\n';
  }
  return os.str();
}

// Machine-readable key=value block for one report.
inline std::string render_kv(const SimReport& r, const std::string& prefix) {
  std::ostringstream os;
  auto emit = [&](const std::string& key, const std::string& value) {
    os << prefix << key << '=' << value << '\n';
  };
  emit("max_node_load", detail::format_double(r.node.max));
  emit("mean_node_load", detail::format_double(r.node.mean));
  emit("stddev_node_load", detail::format_double(r.node.stddev));
  emit("max_link_load", detail::format_double(r.link.max));
  emit("mean_link_load", detail::format_double(r.link.mean));
  emit("stddev_link_load", detail::format_double(r.link.stddev));
  emit("objective", to_string(r.objective));
  emit("saturation_throughput",
       r.capacity_bound ? "capacity-bound" : detail::format_double(r.saturation));
  emit("alltoall_estimate", detail::format_double(r.alltoall_time));
  return os.str();
}

// CSV dump, columns "id,load"; ids are node ids or directed-edge ids in
// (u, v) lexicographic order.
inline std::string loads_csv(const std::vector<double>& loads) {
  std::ostringstream os;
  os << "id,load\n";
  for (std::size_t i = 0; i < loads.size(); ++i)
    os << i << ',' << detail::format_double(loads[i]) << '\n';
  return os.str();
}

}  // namespace nestnet
