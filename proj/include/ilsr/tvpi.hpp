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

#include <optional>
#include <stdexcept>
#include <utility>

#include "ilsr/model.hpp"

namespace ilsr {

// TVPI systems: at most two nonzero coefficients per row. Feasible sets are
// closed under the coordinatewise median, which induces per-coordinate
// semilattices meet_p(x,y) = median(p,x,y) with bottom p. Descent in the
// order anchored at t reaches the unique t-minimal element of a component;
// the pair is connected iff that element is t itself.

inline std::int64_t median(std::int64_t x, std::int64_t y, std::int64_t z) {
  std::int64_t lo = std::min(std::min(x, y), z);
  std::int64_t hi = std::max(std::max(x, y), z);
  return x + y + z - lo - hi;
}

inline std::int64_t meet(std::int64_t p, std::int64_t x, std::int64_t y) {
  return median(p, x, y);
}

/// x <= y in the order with bottom p: x lies between p and y.
inline bool leq_anchored(std::int64_t p, std::int64_t x, std::int64_t y) {
  return meet(p, x, y) == x;
}

/// Vector order and meet anchored coordinatewise at t.
struct PosetContext {
  Assignment anchor;

  bool leq(const Assignment& x, const Assignment& y) const {
    for (std::size_t j = 0; j < anchor.size(); ++j)
      if (!leq_anchored(anchor[j], x[j], y[j])) return false;
    return true;
  }
  Assignment meet_of(const Assignment& x, const Assignment& y) const {
    Assignment out(anchor.size());
    for (std::size_t j = 0; j < anchor.size(); ++j) out[j] = meet(anchor[j], x[j], y[j]);
    return out;
  }
};

inline bool is_tvpi(const ILSInstance& inst) {
  for (int i = 0; i < inst.rows(); ++i) {
    int nonzeros = 0;
    for (int j = 0; j < inst.vars(); ++j)
      if (!inst.coef[i][j].is_zero() && ++nonzeros > 2) return false;
  }
  return true;
}

/// t-monotone greedy descent from s: scan coordinates in increasing index;
/// a coordinate with w_j != t_j moves to the feasible value nearest t_j on
/// its own side (one edge, maximal jump toward t). Fixed point is the unique
/// t-minimal element of s's component; path length <= d*n.
inline std::pair<Assignment, PathWitness> t_descend(const ILSInstance& inst,
                                                    const Assignment& s, const Assignment& t) {
  if (!is_tvpi(inst)) throw std::invalid_argument("t_descend needs a TVPI instance");
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("t_descend endpoints must be feasible");
  Assignment cur = s;
  PathWitness path;
  path.steps.push_back(cur);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j < inst.vars(); ++j) {
      if (cur[j] == t[j]) continue;
      auto [lo, hi] = feasible_interval(inst, cur, j);
      std::int64_t next = cur[j] > t[j] ? std::max(lo, t[j]) : std::min(hi, t[j]);
      if (next != cur[j]) {
        cur[j] = next;
        path.steps.push_back(cur);
        moved = true;
        break;
      }
    }
  }
  return {cur, std::move(path)};
}

inline std::pair<bool, std::optional<PathWitness>> tvpi_reconfigure(const ILSInstance& inst,
                                                                    const Assignment& s,
                                                                    const Assignment& t) {
  auto [bottom, path] = t_descend(inst, s, t);
  if (bottom != t) return {false, std::nullopt};
  return {true, std::move(path)};
}

}  // namespace ilsr
