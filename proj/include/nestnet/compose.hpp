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

#include <string>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/product.hpp"
#include "nestnet/routing_table.hpp"

namespace nestnet {

enum class ComposeOrder { kG1First, kG2First };

inline std::string to_string(ComposeOrder o) {
  return o == ComposeOrder::kG1First ? "g1_first" : "g2_first";
}

inline ComposeOrder parse_compose_order(const std::string& s) {
  if (s == "g1_first") return ComposeOrder::kG1First;
  if (s == "g2_first") return ComposeOrder::kG2First;
  throw Error("unknown compose order '" + s + "'");
}

// Scales factor routings to the product graph. Demands that move in only one
// coordinate copy the factor route into the corresponding row or column;
// mixed demands concatenate one leg per factor at a fixed pivot
// (g1_first: <u1,v1> -> <u2,v1> -> <u2,v2>). Distance additivity of the
// Cartesian product makes every composed path shortest. Factor tables must
// be ordered-mode: the balance guarantee relies on a fixed concatenation
// order per direction.
inline RoutingTable compose_product_routing(const RoutingTable& r1,
                                            const RoutingTable& r2,
                                            const ProductGraph& pg,
                                            ComposeOrder order =
                                                ComposeOrder::kG1First) {
  if (pg.factors.size() != 2)
    throw Error("composition needs a two-factor product, got " +
                std::to_string(pg.factors.size()) + " factors");
  if (r1.mode != DemandMode::kOrdered || r2.mode != DemandMode::kOrdered)
    throw Error("composition requires ordered-mode factor tables");
  const int n1 = pg.factors[0].n, n2 = pg.factors[1].n;
  if (r1.n != n1 || r2.n != n2)
    throw Error("factor tables cover " + std::to_string(r1.n) + " and " +
                std::to_string(r2.n) + " vertices; product factors have " +
                std::to_string(n1) + " and " + std::to_string(n2));

  auto flat = [n2](int u, int v) { return u * n2 + v; };
  RoutingTable out;
  out.mode = DemandMode::kOrdered;
  out.n = pg.graph.n;
  out.routes.reserve(static_cast<std::size_t>(out.n) * (out.n - 1));

  for (int s = 0; s < out.n; ++s) {
    const int u1 = s / n2, v1 = s % n2;
    for (int t = 0; t < out.n; ++t) {
      if (t == s) continue;
      const int u2 = t / n2, v2 = t % n2;
      Route r;
      r.src = s;
      r.dst = t;
      if (u1 == u2) {
        for (int w : r2.path(v1, v2)) r.path.push_back(flat(u1, w));
      } else if (v1 == v2) {
        for (int w : r1.path(u1, u2)) r.path.push_back(flat(w, v1));
      } else if (order == ComposeOrder::kG1First) {
        for (int w : r1.path(u1, u2)) r.path.push_back(flat(w, v1));
        const auto leg2 = r2.path(v1, v2);
        for (std::size_t i = 1; i < leg2.size(); ++i)
          r.path.push_back(flat(u2, leg2[i]));
      } else {
        for (int w : r2.path(v1, v2)) r.path.push_back(flat(u1, w));
        const auto leg1 = r1.path(u1, u2);
        for (std::size_t i = 1; i < leg1.size(); ++i)
          r.path.push_back(flat(leg1[i], v2));
      }
      out.routes.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace nestnet
