/*
 * Copyright 2026 The ilsreconf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ilsr/model.hpp"

namespace ilsr {

// Explicit solution-graph search. Vertices are the feasible points of
// {0..d}^n, edges join points at Hamming distance one (any value change).
// This is the ground truth the regime solvers are cross-checked against,
// so it stays as plain as possible.

inline constexpr std::uint64_t kDefaultStateBudget = 2'000'000;

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail_oracle {

/// (d+1)^n, or budget+1 if it overflows past the budget.
inline std::uint64_t state_space_size(const ILSInstance& inst, std::uint64_t budget) {
  std::uint64_t total = 1, base = static_cast<std::uint64_t>(inst.domain_bound) + 1;
  for (int j = 0; j < inst.vars(); ++j) {
    if (total > budget / base + 1) return budget + 1;
    total *= base;
    if (total > budget) return budget + 1;
  }
  return total;
}

inline void check_budget(const ILSInstance& inst, std::uint64_t budget) {
  if (state_space_size(inst, budget) > budget)
    throw budget_error("state space exceeds the budget of " + std::to_string(budget) +
                       " states (set ILS_MAX_STATES to raise it)");
}

inline std::uint64_t pack(const ILSInstance& inst, const Assignment& x) {
  std::uint64_t key = 0, base = static_cast<std::uint64_t>(inst.domain_bound) + 1;
  for (int j = inst.vars() - 1; j >= 0; --j) key = key * base + static_cast<std::uint64_t>(x[j]);
  return key;
}

}  // namespace detail_oracle

/// All feasible points at Hamming distance one from x, in lexicographic
/// order of the full vectors.
inline std::vector<Assignment> neighbors(const ILSInstance& inst, const Assignment& x) {
  check_dimensions(inst, x);
  if (!in_domain(inst, x) || !is_feasible(inst, x))
    throw std::invalid_argument("neighbors() requires a feasible point");
  std::vector<Assignment> out;
  for (int j = 0; j < inst.vars(); ++j) {
    auto [lo, hi] = feasible_interval(inst, x, j);
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (v == x[j]) continue;
      Assignment y = x;
      y[j] = v;
      out.push_back(std::move(y));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Breadth-first reachability with a shortest witness. Exhaustive inside the
/// component; refuses instances whose full state space exceeds max_states.
inline std::pair<bool, std::optional<PathWitness>> bfs_reachable(
    const ILSInstance& inst, const Assignment& s, const Assignment& t,
    std::uint64_t max_states = kDefaultStateBudget) {
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("bfs endpoints must be feasible");
  if (s == t) return {true, PathWitness{{s}}};
  detail_oracle::check_budget(inst, max_states);

  std::uint64_t space = detail_oracle::state_space_size(inst, max_states);
  std::vector<std::uint64_t> parent(space, space);  // space = unvisited
  std::uint64_t skey = detail_oracle::pack(inst, s), tkey = detail_oracle::pack(inst, t);
  parent[skey] = skey;
  std::deque<Assignment> queue{s};
  while (!queue.empty()) {
    Assignment cur = std::move(queue.front());
    queue.pop_front();
    for (auto& nb : neighbors(inst, cur)) {
      std::uint64_t key = detail_oracle::pack(inst, nb);
      if (parent[key] != space) continue;
      parent[key] = detail_oracle::pack(inst, cur);
      if (key == tkey) {
        PathWitness w;
        Assignment back = nb;
        std::uint64_t bk = key;
        w.steps.push_back(back);
        while (bk != skey) {
          bk = parent[bk];
          Assignment prev(inst.vars());
          std::uint64_t rem = bk, base = static_cast<std::uint64_t>(inst.domain_bound) + 1;
          for (int j = 0; j < inst.vars(); ++j) {
            prev[j] = static_cast<std::int64_t>(rem % base);
            rem /= base;
          }
          w.steps.push_back(std::move(prev));
        }
        std::reverse(w.steps.begin(), w.steps.end());
        return {true, std::move(w)};
      }
      queue.push_back(std::move(nb));
    }
  }
  return {false, std::nullopt};
}

struct ComponentStats {
  Assignment representative;  // lexicographically least vertex
  std::uint64_t size = 0;
  std::uint64_t diameter = 0;
  bool is_path = false;
};

struct GraphStats {
  std::uint64_t feasible_count = 0;
  std::vector<ComponentStats> components;  // ordered by representative

  std::size_t component_count() const { return components.size(); }
};

/// Full component census with exact per-component diameters (all-pairs BFS)
/// and path-graph detection.
inline GraphStats graph_stats(const ILSInstance& inst,
                              std::uint64_t max_states = kDefaultStateBudget) {
  detail_oracle::check_budget(inst, max_states);
  GraphStats stats;

  // Enumerate the feasible set in lexicographic order.
  std::vector<Assignment> verts;
  Assignment cur(inst.vars(), 0);
  for (;;) {
    if (in_domain(inst, cur) && is_feasible(inst, cur)) verts.push_back(cur);
    int j = inst.vars() - 1;
    while (j >= 0 && cur[j] == inst.domain_bound) cur[j--] = 0;
    if (j < 0) break;
    ++cur[j];
  }
  stats.feasible_count = verts.size();

  std::uint64_t space = detail_oracle::state_space_size(inst, max_states);
  std::vector<std::int32_t> comp(space, -1);
  std::vector<std::vector<Assignment>> members;
  for (const auto& v : verts) {
    std::uint64_t key = detail_oracle::pack(inst, v);
    if (comp[key] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(members.size());
    members.emplace_back();
    comp[key] = id;
    std::deque<Assignment> queue{v};
    while (!queue.empty()) {
      Assignment x = std::move(queue.front());
      queue.pop_front();
      members[id].push_back(x);
      for (auto& nb : neighbors(inst, x)) {
        std::uint64_t nk = detail_oracle::pack(inst, nb);
        if (comp[nk] >= 0) continue;
        comp[nk] = id;
        queue.push_back(std::move(nb));
      }
    }
  }

  std::vector<std::int64_t> dmap(space, -1);
  std::vector<std::uint32_t> epoch(space, 0);
  std::uint32_t gen = 0;
  for (auto& mem : members) {
    std::sort(mem.begin(), mem.end());
    ComponentStats cs;
    cs.representative = mem.front();
    cs.size = mem.size();
    std::uint64_t edges = 0, deg_one = 0;
    bool degrees_ok = true;
    for (const auto& v : mem) {
      auto nbs = neighbors(inst, v);
      edges += nbs.size();
      if (nbs.size() == 1) ++deg_one;
      if (nbs.size() > 2) degrees_ok = false;
      // eccentricity of v
      ++gen;
      std::uint64_t far = 0;
      std::uint64_t vk = detail_oracle::pack(inst, v);
      dmap[vk] = 0;
      epoch[vk] = gen;
      std::deque<Assignment> queue{v};
      while (!queue.empty()) {
        Assignment x = std::move(queue.front());
        queue.pop_front();
        std::int64_t dx = dmap[detail_oracle::pack(inst, x)];
        far = std::max<std::uint64_t>(far, static_cast<std::uint64_t>(dx));
        for (auto& nb : neighbors(inst, x)) {
          std::uint64_t nk = detail_oracle::pack(inst, nb);
          if (epoch[nk] == gen) continue;
          epoch[nk] = gen;
          dmap[nk] = dx + 1;
          queue.push_back(std::move(nb));
        }
      }
      cs.diameter = std::max(cs.diameter, far);
    }
    edges /= 2;
    cs.is_path = mem.size() <= 2
                     ? edges + 1 == mem.size()
                     : (degrees_ok && deg_one == 2 && edges + 1 == mem.size());
    stats.components.push_back(std::move(cs));
  }
  std::sort(stats.components.begin(), stats.components.end(),
            [](const ComponentStats& a, const ComponentStats& b) {
              return a.representative < b.representative;
            });
  return stats;
}

}  // namespace ilsr
