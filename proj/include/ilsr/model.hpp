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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilsr/rational.hpp"

namespace ilsr {

/// A point of the box {0..d}^n. Values are 64-bit; the matrix layer carries
/// all unbounded arithmetic.
using Assignment = std::vector<std::int64_t>;

/// Ax >= b over x in {0,...,d}^n. Immutable value type; all solver
/// operations are pure functions on it.
struct ILSInstance {
  std::vector<std::vector<Rational>> coef;  // m rows, n columns each
  std::vector<Rational> rhs;                // length m
  std::int64_t domain_bound = 1;            // d
  int num_vars = 1;                         // n (kept explicitly: m may be 0)

  ILSInstance() = default;
  ILSInstance(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
              std::int64_t d, int n)
      : coef(std::move(a)), rhs(std::move(b)), domain_bound(d), num_vars(n) {
    if (n < 1) throw std::invalid_argument("instance needs at least one variable");
    if (d < 1) throw std::invalid_argument("domain bound must be >= 1");
    if (coef.size() != rhs.size())
      throw std::invalid_argument("coefficient/rhs row count mismatch");
    for (const auto& row : coef)
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("row width differs from variable count");
  }

  int rows() const { return static_cast<int>(coef.size()); }
  int vars() const { return num_vars; }

  bool operator==(const ILSInstance& o) const {
    return coef == o.coef && rhs == o.rhs && domain_bound == o.domain_bound &&
           num_vars == o.num_vars;
  }
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<int> violated_rows;
  std::vector<Rational> slacks;  // sum_j a_ij x_j - b_i per row
};

inline void check_dimensions(const ILSInstance& inst, const Assignment& x) {
  if (static_cast<int>(x.size()) != inst.vars())
    throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                " values, instance has " +
                                std::to_string(inst.vars()) + " variables");
}

inline bool in_domain(const ILSInstance& inst, const Assignment& x) {
  for (auto v : x)
    if (v < 0 || v > inst.domain_bound) return false;
  return true;
}

inline Rational row_slack(const ILSInstance& inst, int i, const Assignment& x) {
  Rational acc = -inst.rhs[i];
  const auto& row = inst.coef[i];
  for (int j = 0; j < inst.vars(); ++j)
    if (!row[j].is_zero() && x[j] != 0) acc += row[j] * x[j];
  return acc;
}

inline FeasibilityReport evaluate(const ILSInstance& inst, const Assignment& x) {
  check_dimensions(inst, x);
  if (!in_domain(inst, x))
    throw std::invalid_argument("assignment value outside [0,d]");
  FeasibilityReport rep;
  rep.slacks.reserve(inst.rows());
  for (int i = 0; i < inst.rows(); ++i) {
    rep.slacks.push_back(row_slack(inst, i, x));
    if (rep.slacks.back() < 0) rep.violated_rows.push_back(i);
  }
  rep.feasible = rep.violated_rows.empty();
  return rep;
}

/// Fast path used by the search loops; same semantics as evaluate().feasible
/// but requires x to be in range already.
inline bool is_feasible(const ILSInstance& inst, const Assignment& x) {
  for (int i = 0; i < inst.rows(); ++i)
    if (row_slack(inst, i, x) < 0) return false;
  return true;
}

/// Replaces column j by its opposite (x_j -> d - x_j change of variable):
/// I' = (A', b - d*A_.j, d). Reachability in the two solution graphs agrees
/// under the same coordinate map.
inline ILSInstance flip_column(const ILSInstance& inst, int j) {
  if (j < 0 || j >= inst.vars()) throw std::invalid_argument("column index out of range");
  ILSInstance out = inst;
  for (int i = 0; i < inst.rows(); ++i) {
    out.rhs[i] -= inst.coef[i][j] * inst.domain_bound;
    out.coef[i][j] = -inst.coef[i][j];
  }
  return out;
}

inline Assignment flip_point(const ILSInstance& inst, int j, Assignment x) {
  check_dimensions(inst, x);
  x[j] = inst.domain_bound - x[j];
  return x;
}

inline std::pair<ILSInstance, std::vector<Assignment>> flip_variable(
    const ILSInstance& inst, int j, const std::vector<Assignment>& points) {
  ILSInstance out = flip_column(inst, j);
  std::vector<Assignment> mapped;
  mapped.reserve(points.size());
  for (const auto& p : points) mapped.push_back(flip_point(inst, j, p));
  return {std::move(out), std::move(mapped)};
}

/// Applies flips for every index in `flips` (a 0/1 mask of length n).
inline ILSInstance flip_columns(const ILSInstance& inst, const std::vector<bool>& flips) {
  ILSInstance out = inst;
  for (int j = 0; j < inst.vars(); ++j)
    if (flips[j]) out = flip_column(out, j);
  return out;
}

inline Assignment flip_points(const ILSInstance& inst, const std::vector<bool>& flips,
                              Assignment x) {
  check_dimensions(inst, x);
  for (int j = 0; j < inst.vars(); ++j)
    if (flips[j]) x[j] = inst.domain_bound - x[j];
  return x;
}

/// Feasible interval of coordinate j with the other coordinates of x fixed,
/// clipped to [0, d]. Returns {1, 0} when empty.
inline std::pair<std::int64_t, std::int64_t> feasible_interval(const ILSInstance& inst,
                                                               const Assignment& x, int j) {
  Rational lo = 0, hi = inst.domain_bound;
  for (int i = 0; i < inst.rows(); ++i) {
    const Rational& a = inst.coef[i][j];
    if (a.is_zero()) continue;
    Rational rest = -inst.rhs[i];
    for (int k = 0; k < inst.vars(); ++k)
      if (k != j && !inst.coef[i][k].is_zero() && x[k] != 0) rest += inst.coef[i][k] * x[k];
    Rational bound = -rest / a;  // a * v + rest >= 0
    if (a > 0) {
      if (bound > lo) lo = bound;
    } else {
      if (bound < hi) hi = bound;
    }
  }
  Int ilo = rceil(lo), ihi = rfloor(hi);
  if (ilo > ihi) return {1, 0};
  std::int64_t vlo = std::max<std::int64_t>(0, to_int64(ilo));
  std::int64_t vhi = std::min<std::int64_t>(inst.domain_bound, to_int64(ihi));
  return {vlo, vhi};
}

inline int hamming(const Assignment& a, const Assignment& b) {
  int dist = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != b[j]) ++dist;
  return dist;
}

/// Explicit step list; consecutive entries differ in exactly one coordinate
/// (any magnitude) and every entry is feasible. A single-entry witness is the
/// empty path.
struct PathWitness {
  std::vector<Assignment> steps;

  std::size_t length() const { return steps.empty() ? 0 : steps.size() - 1; }
};

/// nullopt when the witness is a valid path in the solution graph; otherwise
/// a description of the first violation.
inline std::optional<std::string> path_violation(const ILSInstance& inst,
                                                 const PathWitness& w) {
  if (w.steps.empty()) return "witness has no steps";
  for (std::size_t k = 0; k < w.steps.size(); ++k) {
    const auto& x = w.steps[k];
    if (static_cast<int>(x.size()) != inst.vars()) return "step has wrong arity";
    if (!in_domain(inst, x)) return "step " + std::to_string(k) + " leaves the domain";
    if (!is_feasible(inst, x)) return "step " + std::to_string(k) + " is infeasible";
    if (k > 0 && hamming(w.steps[k - 1], x) != 1)
      return "steps " + std::to_string(k - 1) + " -> " + std::to_string(k) +
             " are not adjacent";
  }
  return std::nullopt;
}

inline bool validate_path(const ILSInstance& inst, const PathWitness& w) {
  return !path_violation(inst, w).has_value();
}

/// Appends `tail` to `head`, dropping repeated junction vertices.
inline void append_path(PathWitness& head, const PathWitness& tail) {
  for (const auto& step : tail.steps) {
    if (!head.steps.empty() && head.steps.back() == step) continue;
    head.steps.push_back(step);
  }
}

inline PathWitness reversed_path(PathWitness w) {
  std::reverse(w.steps.begin(), w.steps.end());
  return w;
}

}  // namespace ilsr
