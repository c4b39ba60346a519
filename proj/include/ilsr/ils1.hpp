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
#include <vector>

#include "ilsr/horn.hpp"
#include "ilsr/index_lp.hpp"
#include "ilsr/model.hpp"
#include "ilsr/tvpi.hpp"

namespace ilsr {

// Index-one instances decompose: after polarity normalization there is a
// variable split Q (TVPI side) / H (Horn side) with
//   (a) every row has at most two nonzeros in Q,
//   (b) every row has at most one positive entry in H,
//   (c) a positive H entry forces the row's Q entries to zero.
// Rows with all-zero Q entries form S. Reconfiguration then reduces to a
// Horn question on A[S,H] followed by a TVPI question on A[S_bar,Q] with the
// Horn minimum substituted in.

struct QHPartition {
  std::vector<int> q_vars;       // ascending
  std::vector<int> h_vars;       // ascending
  std::vector<bool> flipped;     // per original column
  std::vector<int> s_rows;       // rows with zero Q entries (normalized matrix)
  std::vector<int> sbar_rows;    // complement
};

/// Raised when no half-integral alpha of row budget <= 1 is found, i.e. the
/// partition construction has nothing to work from.
struct qh_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checks (a)-(c) on a normalized instance. Returns a reason on failure.
inline std::optional<std::string> qh_violation(const ILSInstance& normalized,
                                               const QHPartition& p) {
  std::vector<bool> in_q(normalized.vars(), false);
  for (int j : p.q_vars) in_q[j] = true;
  for (int i = 0; i < normalized.rows(); ++i) {
    int q_nonzeros = 0, h_positives = 0;
    for (int j : p.q_vars)
      if (!normalized.coef[i][j].is_zero()) ++q_nonzeros;
    for (int j : p.h_vars)
      if (normalized.coef[i][j] > 0) ++h_positives;
    if (q_nonzeros > 2) return "row " + std::to_string(i) + " has >2 nonzeros in Q";
    if (h_positives > 1) return "row " + std::to_string(i) + " has >1 positive in H";
    if (h_positives == 1 && q_nonzeros > 0)
      return "row " + std::to_string(i) + " mixes a positive H entry with Q entries";
  }
  return std::nullopt;
}

/// Builds the partition from a half-integral alpha whose every index-LP row
/// value is at most one: variables at 0 are flipped (becoming 1), then
/// Q = {alpha = 1/2}, H = {alpha = 1}. Conditions (a)-(c) are re-verified
/// explicitly before returning.
inline QHPartition compute_qh_partition(const ILSInstance& inst) {
  IndexSolution idx = compute_index(inst);
  if (idx.z > 1) throw std::invalid_argument("index exceeds one; no QH-partition applies");
  std::vector<Rational> alpha;
  if (idx.alpha_half_integral) {
    alpha = idx.alpha;
  } else {
    auto found = find_half_integral_alpha(sign_pattern(inst), Rational(1));
    if (!found)
      throw qh_error("no half-integral alpha with row budget <= 1 was found");
    alpha = *found;
  }

  QHPartition p;
  p.flipped.assign(inst.vars(), false);
  for (int j = 0; j < inst.vars(); ++j) {
    if (alpha[j] == 0) {
      p.flipped[j] = true;
      alpha[j] = 1;
    }
    if (alpha[j] == Rational(1, 2)) p.q_vars.push_back(j);
    else p.h_vars.push_back(j);
  }
  ILSInstance normalized = flip_columns(inst, p.flipped);
  for (int i = 0; i < inst.rows(); ++i) {
    bool zero_q = true;
    for (int j : p.q_vars)
      if (!normalized.coef[i][j].is_zero()) { zero_q = false; break; }
    (zero_q ? p.s_rows : p.sbar_rows).push_back(i);
  }
  if (auto why = qh_violation(normalized, p))
    throw std::logic_error("QH-partition verification failed: " + *why);
  return p;
}

namespace detail_ils1 {

inline Assignment restrict_to(const Assignment& x, const std::vector<int>& cols) {
  Assignment out;
  out.reserve(cols.size());
  for (int j : cols) out.push_back(x[j]);
  return out;
}

/// Sub-instance on (rows, cols); rhs_override replaces the row rhs when given.
inline ILSInstance sub_instance(const ILSInstance& base, const std::vector<int>& rows,
                                const std::vector<int>& cols,
                                const std::vector<Rational>* rhs_override = nullptr) {
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  coef.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<Rational> row;
    row.reserve(cols.size());
    for (int j : cols) row.push_back(base.coef[rows[r]][j]);
    coef.push_back(std::move(row));
    rhs.push_back(rhs_override ? (*rhs_override)[r] : base.rhs[rows[r]]);
  }
  return ILSInstance(std::move(coef), std::move(rhs), base.domain_bound,
                     static_cast<int>(cols.size()));
}

/// rhs of the Q system: b_{S_bar} - A[S_bar,H] * x_H.
inline std::vector<Rational> q_side_rhs(const ILSInstance& normalized, const QHPartition& p,
                                        const Assignment& x_h) {
  std::vector<Rational> rhs;
  rhs.reserve(p.sbar_rows.size());
  for (int i : p.sbar_rows) {
    Rational b = normalized.rhs[i];
    for (std::size_t k = 0; k < p.h_vars.size(); ++k) {
      const Rational& a = normalized.coef[i][p.h_vars[k]];
      if (!a.is_zero() && x_h[k] != 0) b -= a * x_h[k];
    }
    rhs.push_back(std::move(b));
  }
  return rhs;
}

/// Lifts a path on a coordinate subset to full vectors with the rest frozen.
inline PathWitness embed_path(const PathWitness& sub, const std::vector<int>& cols,
                              const Assignment& frame) {
  PathWitness out;
  out.steps.reserve(sub.steps.size());
  for (const auto& step : sub.steps) {
    Assignment full = frame;
    for (std::size_t k = 0; k < cols.size(); ++k) full[cols[k]] = step[k];
    out.steps.push_back(std::move(full));
  }
  return out;
}

}  // namespace detail_ils1

/// Decomposition solver for index <= 1: Horn stage on (S, H), then TVPI
/// stage on (S_bar, Q) at the Horn minimum. The witness is the H-descent of
/// s with Q frozen, the Q path at the H minimum, and the reversed H-descent
/// of t, mapped back through the polarity flips.
inline std::pair<bool, std::optional<PathWitness>> solve_ils1(const ILSInstance& inst,
                                                              const Assignment& s,
                                                              const Assignment& t) {
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("endpoints must be feasible");
  if (s == t) return {true, PathWitness{{s}}};

  QHPartition p = compute_qh_partition(inst);  // also enforces z <= 1
  ILSInstance normalized = flip_columns(inst, p.flipped);
  Assignment sn = flip_points(inst, p.flipped, s);
  Assignment tn = flip_points(inst, p.flipped, t);

  Assignment x_h;  // Horn-side minimum shared by both endpoints
  PathWitness s_h_path, t_h_path;
  if (!p.h_vars.empty()) {
    ILSInstance horn_side = detail_ils1::sub_instance(normalized, p.s_rows, p.h_vars);
    auto [smin, spath] = descend_to_min(horn_side, detail_ils1::restrict_to(sn, p.h_vars));
    auto [tmin, tpath] = descend_to_min(horn_side, detail_ils1::restrict_to(tn, p.h_vars));
    if (smin != tmin) return {false, std::nullopt};
    x_h = smin;
    s_h_path = std::move(spath);
    t_h_path = std::move(tpath);
  }

  PathWitness q_path;
  if (!p.q_vars.empty()) {
    auto rhs = detail_ils1::q_side_rhs(normalized, p, x_h);
    ILSInstance q_side = detail_ils1::sub_instance(normalized, p.sbar_rows, p.q_vars, &rhs);
    auto [ok, w] = tvpi_reconfigure(q_side, detail_ils1::restrict_to(sn, p.q_vars),
                                    detail_ils1::restrict_to(tn, p.q_vars));
    if (!ok) return {false, std::nullopt};
    q_path = std::move(*w);
  }

  // Assemble in normalized coordinates, then undo the flips.
  PathWitness full;
  full.steps.push_back(sn);
  if (!p.h_vars.empty())
    append_path(full, detail_ils1::embed_path(s_h_path, p.h_vars, sn));
  Assignment mid = full.steps.back();  // (x*_H, s_Q)
  if (!p.q_vars.empty())
    append_path(full, detail_ils1::embed_path(q_path, p.q_vars, mid));
  if (!p.h_vars.empty()) {
    Assignment frame = full.steps.back();  // (x*_H, t_Q)
    append_path(full, detail_ils1::embed_path(reversed_path(std::move(t_h_path)),
                                              p.h_vars, frame));
  }
  PathWitness original;
  original.steps.reserve(full.steps.size());
  for (auto& step : full.steps)
    original.steps.push_back(flip_points(normalized, p.flipped, std::move(step)));
  return {true, std::move(original)};
}

}  // namespace ilsr
