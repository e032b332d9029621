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
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/graph.hpp"
#include "nestnet/metrics.hpp"

namespace nestnet {

constexpr std::int64_t kMaxProductVertices = 1 << 20;

// Cartesian product with tuple labels. Vertices of the flat graph are
// mixed-radix encodings of factor coordinates with factor 0 most significant,
// so all copies of the last factor occupy contiguous id blocks. Two labels
// are adjacent iff they differ in exactly one coordinate and that pair is an
// edge of the corresponding factor.
struct ProductGraph {
  Graph graph;
  std::vector<Graph> factors;
  std::vector<std::int64_t> suffix;  // suffix[i] = product of factor sizes > i

  std::vector<int> label_of(int v) const {
    std::vector<int> coords(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      coords[i] = static_cast<int>(v / suffix[i]);
      v = static_cast<int>(v % suffix[i]);
    }
    return coords;
  }

  int id_of(std::span<const int> coords) const {
    if (coords.size() != factors.size())
      throw Error("label has " + std::to_string(coords.size()) +
                  " coordinates, product has " +
                  std::to_string(factors.size()) + " factors");
    std::int64_t id = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] < 0 || coords[i] >= factors[i].n)
        throw Error("coordinate " + std::to_string(i) + " out of range");
      id += coords[i] * suffix[i];
    }
    return static_cast<int>(id);
  }
};

namespace detail {

// Flat adjacency of a x b with id = u * b.n + v. Neighbor lists come out
// sorted by construction: factor-a neighbors below u, then factor-b
// neighbors, then factor-a neighbors above u.
inline std::vector<std::vector<int>> product_adjacency(const Graph& a,
                                                       const Graph& b) {
  std::vector<std::vector<int>> adj(
      static_cast<std::size_t>(a.n) * static_cast<std::size_t>(b.n));
  for (int u = 0; u < a.n; ++u) {
    const auto& au = a.adj[u];
    const auto split =
        std::lower_bound(au.begin(), au.end(), u) - au.begin();
    for (int v = 0; v < b.n; ++v) {
      auto& out = adj[static_cast<std::size_t>(u) * b.n + v];
      out.reserve(au.size() + b.adj[v].size());
      for (std::size_t i = 0; i < static_cast<std::size_t>(split); ++i)
        out.push_back(au[i] * b.n + v);
      for (int w : b.adj[v]) out.push_back(u * b.n + w);
      for (std::size_t i = split; i < au.size(); ++i)
        out.push_back(au[i] * b.n + v);
    }
  }
  return adj;
}

}  // namespace detail

inline ProductGraph cartesian_product(const Graph& a, const Graph& b) {
  const std::int64_t size = static_cast<std::int64_t>(a.n) * b.n;
  if (size > kMaxProductVertices)
    throw TooLarge("product would have " + std::to_string(size) +
                   " vertices (limit " + std::to_string(kMaxProductVertices) +
                   ")");
  ProductGraph pg;
  pg.graph = Graph::from_adjacency(
      detail::product_adjacency(a, b),
      "(" + (a.name.empty() ? "g1" : a.name) + ")x(" +
          (b.name.empty() ? "g2" : b.name) + ")");
  pg.factors = {a, b};
  pg.suffix = {b.n, 1};
  return pg;
}

// Left-folded n-ary product. The fold and a direct mixed-radix construction
// agree because the encoding of ((a x b) x c) nests to the same flat ids.
inline ProductGraph product_many(const std::vector<Graph>& factors) {
  if (factors.empty()) throw Error("product of zero factors");
  ProductGraph pg;
  pg.factors = factors;
  pg.graph = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const std::int64_t size =
        static_cast<std::int64_t>(pg.graph.n) * factors[i].n;
    if (size > kMaxProductVertices)
      throw TooLarge("product would have " + std::to_string(size) +
                     " vertices (limit " +
                     std::to_string(kMaxProductVertices) + ")");
    pg.graph = Graph::from_adjacency(
        detail::product_adjacency(pg.graph, factors[i]));
  }
  pg.suffix.assign(factors.size(), 1);
  for (std::size_t i = factors.size() - 1; i-- > 0;)
    pg.suffix[i] = pg.suffix[i + 1] * factors[i + 1].n;
  std::string name = factors[0].name.empty() ? "g0" : factors[0].name;
  for (std::size_t i = 1; i < factors.size(); ++i)
    name += "x" + (factors[i].name.empty() ? ("g" + std::to_string(i))
                                           : factors[i].name);
  pg.graph.name = name;
  return pg;
}

inline ProductGraph folded_power(const Graph& g, int alpha) {
  if (alpha < 1) throw Error("folded power requires alpha >= 1");
  return product_many(std::vector<Graph>(alpha, g));
}

struct ProductLawReport {
  bool size_multiplicative = false;
  bool degree_additive = false;
  bool diameter_additive = false;
  bool commutative = false;
  std::vector<std::string> violations;

  bool all_ok() const { return violations.empty(); }
};

// Checks the product laws on a materialized product: size, degree and
// diameter against the factors (diameter by BFS on the flat graph), and
// commutativity of the leading factor pair via relabeling.
inline ProductLawReport verify_product_properties(const ProductGraph& pg,
                                                  int threads = 1) {
  ProductLawReport report;

  std::int64_t size = 1;
  for (const auto& f : pg.factors) size *= f.n;
  report.size_multiplicative = (size == pg.graph.n);
  if (!report.size_multiplicative)
    report.violations.push_back("size: product has " +
                                std::to_string(pg.graph.n) + " vertices, " +
                                "factors multiply to " + std::to_string(size));

  report.degree_additive = true;
  for (int v = 0; v < pg.graph.n && report.degree_additive; ++v) {
    const auto coords = pg.label_of(v);
    int want = 0;
    for (std::size_t i = 0; i < pg.factors.size(); ++i)
      want += pg.factors[i].degree(coords[i]);
    if (pg.graph.degree(v) != want) {
      report.degree_additive = false;
      report.violations.push_back(
          "degree: vertex " + std::to_string(v) + " has degree " +
          std::to_string(pg.graph.degree(v)) + ", factor degrees sum to " +
          std::to_string(want));
    }
  }

  int factor_diameter_sum = 0;
  for (const auto& f : pg.factors) factor_diameter_sum += diameter(f, threads);
  const int flat_diameter = diameter(pg.graph, threads);
  report.diameter_additive = (flat_diameter == factor_diameter_sum);
  if (!report.diameter_additive)
    report.violations.push_back(
        "diameter: product " + std::to_string(flat_diameter) +
        " != factor sum " + std::to_string(factor_diameter_sum));

  report.commutative = true;
  if (pg.factors.size() >= 2) {
    // Swap the first two factors and compare under coordinate relabeling.
    std::vector<Graph> swapped = pg.factors;
    std::swap(swapped[0], swapped[1]);
    const ProductGraph qg = product_many(swapped);
    for (int v = 0; v < pg.graph.n && report.commutative; ++v) {
      auto coords = pg.label_of(v);
      std::swap(coords[0], coords[1]);
      const int w = qg.id_of(coords);
      std::vector<int> mapped;
      mapped.reserve(pg.graph.adj[v].size());
      for (int u : pg.graph.adj[v]) {
        auto cu = pg.label_of(u);
        std::swap(cu[0], cu[1]);
        mapped.push_back(qg.id_of(cu));
      }
      std::sort(mapped.begin(), mapped.end());
      if (mapped != qg.graph.adj[w]) {
        report.commutative = false;
        report.violations.push_back("commutativity: neighborhood of vertex " +
                                    std::to_string(v) +
                                    " does not map onto its image");
      }
    }
  }
  return report;
}

// Sidecar label map: one line per vertex, "flat_id c0 c1 ... c(f-1)".
inline std::string save_label_map(const ProductGraph& pg) {
  std::ostringstream os;
  for (int v = 0; v < pg.graph.n; ++v) {
    os << v;
    for (int c : pg.label_of(v)) os << ' ' << c;
    os << '\n';
  }
  return os.str();
}

}  // namespace nestnet
