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

#include <map>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "nestnet/generators.hpp"
#include "nestnet/metrics.hpp"
#include "nestnet/search.hpp"

using namespace nestnet;

TEST_CASE("moore mpl bound") {
  CHECK(moore_mpl_bound(16, 3) == Rational(33, 15));
  CHECK(to_double(moore_mpl_bound(16, 3)) == Catch::Approx(2.2));
  CHECK(moore_mpl_bound(10, 3) == Rational(5, 3));
  CHECK(moore_mpl_bound(4, 3) == Rational(1));
  CHECK(moore_mpl_bound(16, 4) == Rational(26, 15));
  CHECK(moore_mpl_bound(32, 3) == Rational(91, 31));
  CHECK(moore_mpl_bound(32, 4) == Rational(73, 31));
  CHECK_THROWS_AS(moore_mpl_bound(10, 1), Error);

  CHECK(moore_diameter_bound(10, 3) == 2);
  CHECK(moore_diameter_bound(16, 3) == 3);
  CHECK(moore_diameter_bound(32, 3) == 4);
  CHECK(moore_diameter_bound(32, 4) == 3);
}

TEST_CASE("random regular generator") {
  // (4,3): K4 is the only 3-regular graph on four vertices.
  const Graph k4 = random_regular(4, 3, 1);
  CHECK(k4 == complete(4));

  // (6,2): connected forces the 6-cycle (two triangles are rejected).
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const Graph g = random_regular(6, 2, seed);
    CHECK(g.regular_degree() == 2);
    CHECK(is_connected(g));
    CHECK(diameter(g) == 3);  // C6
  }

  const Graph g = random_regular(10, 3, 1);
  CHECK(g.n == 10);
  CHECK(g.regular_degree() == 3);
  CHECK(is_connected(g));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph r = random_regular(16, 3, seed);
    CHECK(r.regular_degree() == 3);
    CHECK(is_connected(r));
  }

  CHECK_THROWS_AS(random_regular(5, 3, 1), Error);  // odd n*k
  CHECK_THROWS_AS(random_regular(4, 4, 1), Error);  // k >= n

  // Determinism.
  CHECK(random_regular(12, 3, 9) == random_regular(12, 3, 9));
}

TEST_CASE("double edge swap preserves the degree sequence and connectivity") {
  Graph g = petersen();
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    g = double_edge_swap(g, rng);
    REQUIRE(g.n == 10);
    REQUIRE(g.regular_degree() == 3);
    REQUIRE(is_connected(g));
  }
  // The swap must produce simple graphs: re-validate through from_edges.
  CHECK_NOTHROW(Graph::from_edges(g.n, g.edges()));
}

TEST_CASE("search finds the petersen-optimal (10,3)") {
  SearchConfig cfg;
  cfg.n = 10;
  cfg.k = 3;
  cfg.budget = 100000;
  cfg.restarts = 4;
  cfg.seed = 1;
  const SearchResult r = search_optimal(cfg);
  CHECK(r.mpl == Rational(5, 3));
  CHECK(r.diameter == 2);
  CHECK(r.hit_lower_bound);
  CHECK(r.graph.regular_degree() == 3);
  CHECK(is_connected(r.graph));
  CHECK(mean_path_length(r.graph) == r.mpl);
  CHECK(r.evaluations_used <= cfg.budget);
}

TEST_CASE("search result on (4,3) is immediate") {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.k = 3;
  cfg.budget = 10;
  cfg.restarts = 2;
  cfg.seed = 3;
  const SearchResult r = search_optimal(cfg);
  CHECK(r.mpl == Rational(1));
  CHECK(r.hit_lower_bound);
  CHECK(r.graph == complete(4));
}

TEST_CASE("search is deterministic and thread-count independent") {
  SearchConfig cfg;
  cfg.n = 14;
  cfg.k = 3;
  cfg.budget = 40000;
  cfg.restarts = 4;
  cfg.seed = 11;

  const SearchResult a = search_optimal(cfg);
  const SearchResult b = search_optimal(cfg);
  CHECK(a.graph == b.graph);
  CHECK(a.evaluations_used == b.evaluations_used);

  cfg.threads = 4;
  const SearchResult c = search_optimal(cfg);
  CHECK(a.graph == c.graph);
  CHECK(a.mpl == c.mpl);
  CHECK(a.evaluations_used == c.evaluations_used);
}

TEST_CASE("best-so-far trace is monotone within each restart") {
  SearchConfig cfg;
  cfg.n = 16;
  cfg.k = 3;
  cfg.budget = 60000;
  cfg.restarts = 3;
  cfg.seed = 5;
  std::map<int, std::vector<std::int64_t>> traces;
  const SearchResult r = search_optimal(
      cfg, [&](int restart, std::int64_t, std::int64_t best_total) {
        traces[restart].push_back(best_total);
      });
  REQUIRE_FALSE(traces.empty());
  for (const auto& [restart, totals] : traces)
    for (std::size_t i = 1; i < totals.size(); ++i)
      CHECK(totals[i] < totals[i - 1]);
  // hit_lower_bound implies exact rational equality with the bound.
  if (r.hit_lower_bound)
    CHECK(mean_path_length(r.graph) == moore_mpl_bound(cfg.n, cfg.k));
}
