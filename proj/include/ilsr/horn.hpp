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

// Horn systems: at most one positive coefficient per row. Feasible sets are
// closed under coordinatewise min, so every component has a unique minimal
// element; two points are connected iff they descend to the same minimum.

inline bool is_horn(const ILSInstance& inst) {
  for (int i = 0; i < inst.rows(); ++i) {
    int positives = 0;
    for (int j = 0; j < inst.vars(); ++j)
      if (inst.coef[i][j] > 0 && ++positives > 1) return false;
  }
  return true;
}

/// Greedy monotone descent: scan coordinates in increasing index; the first
/// coordinate that admits a feasible decrease drops to its lowest feasible
/// value (one edge, any magnitude). The fixed point is the unique minimal
/// solution of s's component; path length <= d*n.
inline std::pair<Assignment, PathWitness> descend_to_min(const ILSInstance& inst,
                                                         const Assignment& s) {
  if (!is_horn(inst)) throw std::invalid_argument("descend_to_min needs a Horn instance");
  check_dimensions(inst, s);
  if (!in_domain(inst, s) || !is_feasible(inst, s))
    throw std::invalid_argument("descent start must be feasible");
  Assignment cur = s;
  PathWitness path;
  path.steps.push_back(cur);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j < inst.vars(); ++j) {
      auto [lo, hi] = feasible_interval(inst, cur, j);
      (void)hi;
      if (lo < cur[j]) {
        cur[j] = lo;
        path.steps.push_back(cur);
        moved = true;
        break;
      }
    }
  }
  return {cur, std::move(path)};
}

/// Connected iff the two component minima coincide; the witness goes down
/// from s and back up to t.
inline std::pair<bool, std::optional<PathWitness>> horn_reconfigure(const ILSInstance& inst,
                                                                    const Assignment& s,
                                                                    const Assignment& t) {
  if (s == t) {
    check_dimensions(inst, s);
    if (!in_domain(inst, s) || !is_feasible(inst, s))
      throw std::invalid_argument("endpoints must be feasible");
    return {true, PathWitness{{s}}};
  }
  auto [smin, spath] = descend_to_min(inst, s);
  auto [tmin, tpath] = descend_to_min(inst, t);
  if (smin != tmin) return {false, std::nullopt};
  PathWitness w = std::move(spath);
  append_path(w, reversed_path(std::move(tpath)));
  return {true, std::move(w)};
}

}  // namespace ilsr
