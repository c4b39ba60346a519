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
#include <vector>

#include "ilsr/horn.hpp"
#include "ilsr/index_lp.hpp"
#include "ilsr/model.hpp"

namespace ilsr {

// Index < 1 regime. Such matrices admit an elimination ordering: columns can
// be removed one by one, each satisfying, against the columns still present,
//   (i)  a_ij > 0 implies a_ij' = 0 for every other remaining column j', or
//   (ii) a_ij < 0 implies a_ij' = 0 for every other remaining column j'.
// Flipping the (ii)-columns and sorting by the ordering yields property
// (P1): a positive entry sees only <= 0 entries before it in its row and
// only zeros after it. Under (P1) the matrix is Horn, the solution graph is
// connected, and prefix substitution toward the global minimum gives a path
// of length <= n from any feasible point.

struct EliminationOrdering {
  std::vector<int> order;  // columns in elimination order
  std::vector<int> kind;   // 1 or 2, parallel to order
};

namespace detail_elim {

inline bool eliminable(const ILSInstance& inst, const std::vector<bool>& remaining, int j,
                       bool positive_form) {
  for (int i = 0; i < inst.rows(); ++i) {
    const Rational& pivot = inst.coef[i][j];
    bool triggers = positive_form ? pivot > 0 : pivot < 0;
    if (!triggers) continue;
    for (int k = 0; k < inst.vars(); ++k)
      if (k != j && remaining[k] && !inst.coef[i][k].is_zero()) return false;
  }
  return true;
}

}  // namespace detail_elim

/// Greedy: condition (ii) columns are taken before (i) columns, lowest index
/// first ((ii) also covers positive-only columns, where it holds with
/// nothing to check). Greedy cannot get stuck when an ordering exists
/// (eliminability is monotone under column removal), so nullopt means no
/// ordering at all.
inline std::optional<EliminationOrdering> elimination_ordering(const ILSInstance& inst) {
  std::vector<bool> remaining(inst.vars(), true);
  EliminationOrdering out;
  for (int round = 0; round < inst.vars(); ++round) {
    int pick = -1, kind = 0;
    for (int j = 0; j < inst.vars() && pick < 0; ++j)
      if (remaining[j] && detail_elim::eliminable(inst, remaining, j, false)) {
        pick = j;
        kind = 2;
      }
    for (int j = 0; j < inst.vars() && pick < 0; ++j)
      if (remaining[j] && detail_elim::eliminable(inst, remaining, j, true)) {
        pick = j;
        kind = 1;
      }
    if (pick < 0) return std::nullopt;
    remaining[pick] = false;
    out.order.push_back(pick);
    out.kind.push_back(kind);
  }
  return out;
}

struct P1Normalization {
  ILSInstance instance;           // flipped and column-permuted
  std::vector<bool> flipped;      // per original column
  std::vector<int> column_order;  // normalized column k = original column_order[k]
};

inline std::optional<std::string> p1_violation(const ILSInstance& inst) {
  for (int i = 0; i < inst.rows(); ++i)
    for (int j = 0; j < inst.vars(); ++j) {
      if (!(inst.coef[i][j] > 0)) continue;
      for (int k = 0; k < j; ++k)
        if (inst.coef[i][k] > 0)
          return "row " + std::to_string(i) + ": positive entry before column " +
                 std::to_string(j);
      for (int k = j + 1; k < inst.vars(); ++k)
        if (!inst.coef[i][k].is_zero())
          return "row " + std::to_string(i) + ": nonzero entry after column " +
                 std::to_string(j);
    }
  return std::nullopt;
}

inline P1Normalization normalize_p1(const ILSInstance& inst) {
  auto ord = elimination_ordering(inst);
  if (!ord) throw std::invalid_argument("matrix admits no elimination ordering");
  P1Normalization norm;
  norm.flipped.assign(inst.vars(), false);
  for (std::size_t k = 0; k < ord->order.size(); ++k)
    if (ord->kind[k] == 2) norm.flipped[ord->order[k]] = true;
  norm.column_order = ord->order;
  ILSInstance flipped = flip_columns(inst, norm.flipped);
  std::vector<std::vector<Rational>> coef(inst.rows(),
                                          std::vector<Rational>(inst.vars()));
  for (int i = 0; i < inst.rows(); ++i)
    for (int k = 0; k < inst.vars(); ++k) coef[i][k] = flipped.coef[i][norm.column_order[k]];
  norm.instance = ILSInstance(std::move(coef), flipped.rhs, inst.domain_bound, inst.vars());
  if (auto why = p1_violation(norm.instance))
    throw std::logic_error("normalization failed to reach (P1): " + *why);
  return norm;
}

inline Assignment to_normalized(const P1Normalization& norm, const ILSInstance& inst,
                                const Assignment& x) {
  Assignment out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    int j = norm.column_order[k];
    out[k] = norm.flipped[j] ? inst.domain_bound - x[j] : x[j];
  }
  return out;
}

inline Assignment from_normalized(const P1Normalization& norm, const ILSInstance& inst,
                                  const Assignment& x) {
  Assignment out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    int j = norm.column_order[k];
    out[j] = norm.flipped[j] ? inst.domain_bound - x[k] : x[k];
  }
  return out;
}

namespace detail_elim {

/// s -> (x*_1, s_2..s_n) -> (x*_1, x*_2, s_3..) -> ... -> x*; every prefix
/// vector is feasible under (P1). Consecutive duplicates are dropped.
inline PathWitness prefix_path(const ILSInstance& inst, const Assignment& from,
                               const Assignment& target) {
  PathWitness w;
  w.steps.push_back(from);
  Assignment cur = from;
  for (std::size_t k = 0; k < cur.size(); ++k) {
    if (cur[k] == target[k]) continue;
    cur[k] = target[k];
    if (!is_feasible(inst, cur))
      throw std::logic_error("prefix substitution left the feasible region");
    w.steps.push_back(cur);
  }
  return w;
}

}  // namespace detail_elim

/// Always-yes path for index < 1: normalize to (P1), descend to the global
/// minimum, connect both endpoints through it. Total length <= 2n.
inline PathWitness z_less_one_path(const ILSInstance& inst, const Assignment& s,
                                   const Assignment& t) {
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("endpoints must be feasible");
  if (compute_index(inst).z >= 1)
    throw std::invalid_argument("index is not below one");
  if (s == t) return PathWitness{{s}};

  P1Normalization norm = normalize_p1(inst);
  Assignment sn = to_normalized(norm, inst, s);
  Assignment tn = to_normalized(norm, inst, t);
  auto [bottom, unused] = descend_to_min(norm.instance, sn);
  (void)unused;

  PathWitness down = detail_elim::prefix_path(norm.instance, sn, bottom);
  PathWitness up = detail_elim::prefix_path(norm.instance, tn, bottom);
  append_path(down, reversed_path(std::move(up)));
  PathWitness out;
  out.steps.reserve(down.steps.size());
  for (auto& step : down.steps) out.steps.push_back(from_normalized(norm, inst, step));
  return out;
}

}  // namespace ilsr
