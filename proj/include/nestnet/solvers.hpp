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
#include <limits>
#include <utility>
#include <vector>

#include "nestnet/common.hpp"
#include "nestnet/routing_model.hpp"

namespace nestnet {

namespace detail {

// Mutable selection state with O(path length) reselection. Because every
// candidate of a group has the same length, the load total is invariant and
// minimizing the variance objective is the same as minimizing sum d^2.
struct SelectionState {
  const RoutingModel* model;
  Selection selection;
  std::vector<std::int64_t> d;
  std::int64_t sum_sq = 0;

  explicit SelectionState(const RoutingModel& m)
      : model(&m), selection(m.num_groups(), 0), d(m.fixed_load) {
    for (int g : m.free_groups) apply_interior(m.candidates[g][0], +1);
    for (std::int64_t v : d) sum_sq += v * v;
  }

  void apply_interior(const std::vector<int>& path, int sign) {
    for (std::size_t i = 1; i + 1 < path.size(); ++i) d[path[i]] += sign;
  }

  // Switches group g to candidate c and returns the change in sum d^2.
  std::int64_t reselect(int g, int c) {
    const int old = selection[g];
    if (old == c) return 0;
    std::int64_t delta = 0;
    const auto& out = model->candidates[g][old];
    for (std::size_t i = 1; i + 1 < out.size(); ++i) {
      const std::int64_t v = d[out[i]]--;
      delta += 1 - 2 * v;  // (v-1)^2 - v^2
    }
    const auto& in = model->candidates[g][c];
    for (std::size_t i = 1; i + 1 < in.size(); ++i) {
      const std::int64_t v = d[in[i]]++;
      delta += 2 * v + 1;  // (v+1)^2 - v^2
    }
    selection[g] = c;
    sum_sq += delta;
    return delta;
  }

  LoadProfile profile() const {
    LoadProfile p;
    p.d = d;
    p.sum_squares = sum_sq;
    p.objective = objective_of_loads(d);
    return p;
  }
};

// Smallest possible sum of squares for integer loads with the given total:
// loads as flat as they can get.
inline std::int64_t flat_sum_squares(std::int64_t total, std::int64_t n) {
  const std::int64_t q = total / n, r = total % n;
  return r * (q + 1) * (q + 1) + (n - r) * q * q;
}

}  // namespace detail

// Exact minimizer of the load-variance objective by depth-first
// branch-and-bound over the free groups (largest first). The DFS maintains a
// partial load vector holding only the fixed load plus the groups assigned so
// far; every interior hit still to be placed adds at least one to the sum of
// squares, which gives the pruning bound. Ties resolve to the
// lexicographically smallest selection vector. Instances with more than
// leaf_guard candidate combinations are refused.
inline std::pair<Selection, LoadProfile> solve_exact(
    const RoutingModel& model, std::int64_t leaf_guard = 10'000'000) {
  double combos = 1.0;
  for (int g : model.free_groups)
    combos *= static_cast<double>(model.candidates[g].size());
  if (combos > static_cast<double>(leaf_guard))
    throw TooLarge("exact solve would enumerate ~" +
                   std::to_string(combos) + " selections (guard " +
                   std::to_string(leaf_guard) + "); use the local solver");

  std::vector<int> order = model.free_groups;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return model.candidates[a].size() > model.candidates[b].size();
  });

  // suffix_mass[i]: interior hits still to be placed by groups order[i..].
  std::vector<std::int64_t> suffix_mass(order.size() + 1, 0);
  for (std::size_t i = order.size(); i-- > 0;)
    suffix_mass[i] =
        suffix_mass[i + 1] +
        static_cast<std::int64_t>(model.candidates[order[i]][0].size()) - 2;

  std::vector<std::int64_t> d = model.fixed_load;
  std::int64_t partial_sq = 0;
  for (std::int64_t v : d) partial_sq += v * v;

  std::int64_t best_sq = std::numeric_limits<std::int64_t>::max();
  Selection best_sel;
  Selection current(model.num_groups(), 0);

  auto apply = [&](const std::vector<int>& path, int sign) {
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const std::int64_t v = d[path[i]];
      partial_sq += sign > 0 ? 2 * v + 1 : 1 - 2 * v;
      d[path[i]] += sign;
    }
  };

  auto descend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      if (partial_sq < best_sq ||
          (partial_sq == best_sq && current < best_sel)) {
        best_sq = partial_sq;
        best_sel = current;
      }
      return;
    }
    const int g = order[depth];
    for (int c = 0; c < static_cast<int>(model.candidates[g].size()); ++c) {
      current[g] = c;
      apply(model.candidates[g][c], +1);
      if (partial_sq + suffix_mass[depth + 1] <= best_sq)
        self(self, depth + 1);
      apply(model.candidates[g][c], -1);
    }
    current[g] = 0;
  };
  descend(descend, 0);

  detail::SelectionState final_state(model);
  for (std::size_t g = 0; g < best_sel.size(); ++g)
    final_state.reselect(static_cast<int>(g), best_sel[g]);
  return {best_sel, final_state.profile()};
}

struct LocalSchedule {
  double initial_temp = 6.0;
  double decay = 0.998;
  int steps_per_temp = 64;
  double min_temp = 0.02;
  std::int64_t max_moves = 400'000;  // across restarts
  int restarts = 4;
};

struct LocalResult {
  Selection selection;
  LoadProfile profile;
  Rational greedy_objective;  // objective of the greedy-descended start
};

namespace detail {

// Steepest single-group descent to a local optimum.
inline void greedy_descent(SelectionState& state) {
  const RoutingModel& model = *state.model;
  while (true) {
    std::int64_t best_delta = 0;
    int best_g = -1, best_c = -1;
    for (int g : model.free_groups) {
      const int cur = state.selection[g];
      for (int c = 0; c < static_cast<int>(model.candidates[g].size()); ++c) {
        if (c == cur) continue;
        const std::int64_t delta = state.reselect(g, c);
        if (delta < best_delta) {
          best_delta = delta;
          best_g = g;
          best_c = c;
        }
        state.reselect(g, cur);
      }
    }
    if (best_g < 0) break;
    state.reselect(best_g, best_c);
  }
}

inline void anneal_selection(SelectionState& state, Rng& rng,
                             const LocalSchedule& sched, std::int64_t moves,
                             std::int64_t stop_sum_sq) {
  const RoutingModel& model = *state.model;
  const auto& free = model.free_groups;
  if (free.empty()) return;

  Selection best_sel = state.selection;
  std::int64_t best_sq = state.sum_sq;
  double temp = sched.initial_temp;
  int steps_at_temp = 0;

  for (std::int64_t step = 0; step < moves && best_sq > stop_sum_sq; ++step) {
    const int g = free[rng.below_int(static_cast<int>(free.size()))];
    const int alt =
        rng.below_int(static_cast<int>(model.candidates[g].size()));
    const double coin = rng.unit();
    if (++steps_at_temp >= sched.steps_per_temp) {
      steps_at_temp = 0;
      temp = std::max(temp * sched.decay, sched.min_temp);
    }
    const int cur = state.selection[g];
    if (alt == cur) continue;
    const std::int64_t delta = state.reselect(g, alt);
    if (delta <= 0 || coin < std::exp(-static_cast<double>(delta) / temp)) {
      if (state.sum_sq < best_sq) {
        best_sq = state.sum_sq;
        best_sel = state.selection;
      }
    } else {
      state.reselect(g, cur);
    }
  }
  for (std::size_t g = 0; g < best_sel.size(); ++g)
    if (state.selection[g] != best_sel[g])
      state.reselect(static_cast<int>(g), best_sel[g]);
}

}  // namespace detail

// Annealed local search over single-group reselection moves. Restart 0
// continues from the greedy-descended start, the others from seeded random
// selections; the merged result is never worse than the greedy start.
inline LocalResult solve_local(const RoutingModel& model, std::uint64_t seed,
                               const LocalSchedule& sched = {},
                               int threads = 1) {
  detail::SelectionState greedy(model);
  detail::greedy_descent(greedy);
  const Selection greedy_sel = greedy.selection;
  const std::int64_t greedy_sq = greedy.sum_sq;

  const std::int64_t total = [&] {
    std::int64_t s = 0;
    for (std::int64_t v : model.fixed_load) s += v;
    for (int g : model.free_groups)
      s += static_cast<std::int64_t>(model.candidates[g][0].size()) - 2;
    return s;
  }();
  const std::int64_t stop_sq =
      detail::flat_sum_squares(total, model.graph.n);

  const int restarts = std::max(sched.restarts, 1);
  const std::int64_t moves_each = std::max<std::int64_t>(
      sched.max_moves / restarts, 1);

  std::vector<Selection> results(restarts);
  std::vector<std::int64_t> result_sq(restarts);
  parallel_for(restarts, threads, [&](std::size_t r) {
    Rng rng(splitmix64(seed ^ static_cast<std::uint64_t>(r)) ^
            0xa51ca11b5ull);
    detail::SelectionState state(model);
    if (r == 0) {
      for (std::size_t g = 0; g < greedy_sel.size(); ++g)
        state.reselect(static_cast<int>(g), greedy_sel[g]);
    } else {
      for (int g : model.free_groups)
        state.reselect(
            g, rng.below_int(static_cast<int>(model.candidates[g].size())));
    }
    detail::anneal_selection(state, rng, sched, moves_each, stop_sq);
    detail::greedy_descent(state);
    results[r] = state.selection;
    result_sq[r] = state.sum_sq;
  });

  int winner = -1;  // -1: the greedy start itself
  std::int64_t winner_sq = greedy_sq;
  for (int r = 0; r < restarts; ++r) {
    if (result_sq[r] < winner_sq) {
      winner_sq = result_sq[r];
      winner = r;
    }
  }
  const Selection& chosen = winner < 0 ? greedy_sel : results[winner];

  detail::SelectionState final_state(model);
  for (std::size_t g = 0; g < chosen.size(); ++g)
    final_state.reselect(static_cast<int>(g), chosen[g]);
  LocalResult out;
  out.selection = chosen;
  out.profile = final_state.profile();
  out.greedy_objective =
      objective_of_loads([&] {
        detail::SelectionState s(model);
        for (std::size_t g = 0; g < greedy_sel.size(); ++g)
          s.reselect(static_cast<int>(g), greedy_sel[g]);
        return s.d;
      }());
  return out;
}

}  // namespace nestnet
