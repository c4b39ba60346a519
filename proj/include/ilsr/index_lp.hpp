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

#include "ilsr/model.hpp"
#include "ilsr/simplex.hpp"

namespace ilsr {

// The complexity index of an instance is the optimal value of
//
//   minimize Z
//   s.t.     sum_{j: a_ij > 0} alpha_j + sum_{j: a_ij < 0} (1 - alpha_j) <= Z
//            0 <= alpha_j <= 1
//
// one constraint per matrix row. It depends on the sign pattern of A only
// and splits instances into the three solver regimes around Z = 1.

/// Entrywise signs of A: -1, 0, +1.
struct SignMatrix {
  std::vector<std::vector<int>> entries;

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return entries.empty() ? 0 : static_cast<int>(entries[0].size()); }
};

inline SignMatrix sign_pattern(const ILSInstance& inst) {
  SignMatrix s;
  s.entries.assign(inst.rows(), std::vector<int>(inst.vars(), 0));
  for (int i = 0; i < inst.rows(); ++i)
    for (int j = 0; j < inst.vars(); ++j) {
      const Rational& a = inst.coef[i][j];
      s.entries[i][j] = a.is_zero() ? 0 : (a > 0 ? 1 : -1);
    }
  return s;
}

struct IndexSolution {
  Rational z;
  std::vector<Rational> alpha;
  bool alpha_half_integral = false;
};

enum class RegimeClass { LessThanOne, ExactlyOne, GreaterThanOne };

inline RegimeClass classify(const IndexSolution& sol) {
  if (sol.z < 1) return RegimeClass::LessThanOne;
  if (sol.z == 1) return RegimeClass::ExactlyOne;
  return RegimeClass::GreaterThanOne;
}

inline const char* regime_name(RegimeClass r) {
  switch (r) {
    case RegimeClass::LessThanOne: return "LessThanOne";
    case RegimeClass::ExactlyOne: return "ExactlyOne";
    default: return "GreaterThanOne";
  }
}

namespace detail_index {

/// Row value of the index LP at a full alpha vector.
inline Rational lp_row_value(const std::vector<int>& srow,
                             const std::vector<Rational>& alpha) {
  Rational v = 0;
  for (std::size_t j = 0; j < srow.size(); ++j) {
    if (srow[j] > 0) v += alpha[j];
    else if (srow[j] < 0) v += 1 - alpha[j];
  }
  return v;
}

/// min Z over alphas with the given partial fixing (entries < 0 mean free).
/// The sign rows with n variables become: sum signed alpha - Z <= -(#neg) -
/// fixed contributions; alpha_j <= 1 rows close the box.
inline Rational lp_optimum_with_fixings(const SignMatrix& s,
                                        const std::vector<Rational>& fixed,
                                        const std::vector<bool>& is_fixed) {
  int n = s.cols();
  std::vector<int> col_of(n, -1);
  int nfree = 0;
  for (int j = 0; j < n; ++j)
    if (!is_fixed[j]) col_of[j] = nfree++;
  lp::Problem p;
  p.obj.assign(nfree + 1, Rational(0));
  p.obj[nfree] = 1;  // Z
  for (int i = 0; i < s.rows(); ++i) {
    std::vector<Rational> row(nfree + 1, Rational(0));
    Rational rhs = 0;
    for (int j = 0; j < n; ++j) {
      int sg = s.entries[i][j];
      if (sg == 0) continue;
      if (is_fixed[j]) {
        rhs -= (sg > 0) ? fixed[j] : (1 - fixed[j]);
      } else {
        row[col_of[j]] += (sg > 0) ? 1 : -1;
        if (sg < 0) rhs -= 1;
      }
    }
    row[nfree] = -1;
    p.lhs.push_back(std::move(row));
    p.rhs.push_back(rhs);
  }
  for (int j = 0; j < n; ++j) {
    if (is_fixed[j]) continue;
    std::vector<Rational> row(nfree + 1, Rational(0));
    row[col_of[j]] = 1;
    p.lhs.push_back(std::move(row));
    p.rhs.push_back(Rational(1));
  }
  auto sol = lp::solve(p);
  if (sol.status != lp::Status::optimal)
    throw std::logic_error("index LP must be feasible and bounded");
  return sol.value;
}

inline bool dfs_half_integral(const SignMatrix& s, const Rational& budget, int j,
                              std::vector<Rational>& fixed, std::vector<bool>& is_fixed) {
  int n = s.cols();
  if (j == n) {
    for (int i = 0; i < s.rows(); ++i)
      if (lp_row_value(s.entries[i], fixed) > budget) return false;
    return true;
  }
  static const Rational candidates[3] = {Rational(1, 2), Rational(1), Rational(0)};
  for (const Rational& v : candidates) {
    fixed[j] = v;
    is_fixed[j] = true;
    bool viable = j + 1 == n || lp_optimum_with_fixings(s, fixed, is_fixed) <= budget;
    if (viable && dfs_half_integral(s, budget, j + 1, fixed, is_fixed)) return true;
    is_fixed[j] = false;
  }
  fixed[j] = 0;
  return false;
}

}  // namespace detail_index

/// Searches for alpha in {0, 1/2, 1}^n whose every LP row value is <= budget.
/// Exact-LP pruning keeps the walk short; completeness comes from exhausting
/// the three values per coordinate.
inline std::optional<std::vector<Rational>> find_half_integral_alpha(
    const SignMatrix& s, const Rational& budget) {
  int n = s.cols();
  std::vector<Rational> fixed(n, Rational(0));
  std::vector<bool> is_fixed(n, false);
  if (!detail_index::dfs_half_integral(s, budget, 0, fixed, is_fixed)) return std::nullopt;
  return fixed;
}

inline bool is_half_integral(const std::vector<Rational>& alpha) {
  for (const auto& a : alpha)
    if (a != 0 && a != 1 && a != Rational(1, 2)) return false;
  return true;
}

inline IndexSolution compute_index(const ILSInstance& inst) {
  SignMatrix s = sign_pattern(inst);
  IndexSolution out;
  if (inst.rows() == 0) {
    out.z = 0;
    out.alpha.assign(inst.vars(), Rational(1, 2));
    out.alpha_half_integral = true;
    return out;
  }
  // Vertex alpha from a direct solve, then (only in the regime where the
  // QH machinery consumes it) snapped to a half-integral optimum if one
  // exists at the same objective value.
  lp::Problem p;
  int n = inst.vars();
  p.obj.assign(n + 1, Rational(0));
  p.obj[n] = 1;
  for (int i = 0; i < s.rows(); ++i) {
    std::vector<Rational> row(n + 1, Rational(0));
    Rational rhs = 0;
    for (int j = 0; j < n; ++j) {
      int sg = s.entries[i][j];
      if (sg == 0) continue;
      row[j] = (sg > 0) ? 1 : -1;
      if (sg < 0) rhs -= 1;
    }
    row[n] = -1;
    p.lhs.push_back(std::move(row));
    p.rhs.push_back(rhs);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> row(n + 1, Rational(0));
    row[j] = 1;
    p.lhs.push_back(std::move(row));
    p.rhs.push_back(Rational(1));
  }
  auto sol = lp::solve(p);
  if (sol.status != lp::Status::optimal)
    throw std::logic_error("index LP must be feasible and bounded");
  out.z = sol.value;
  out.alpha.assign(sol.x.begin(), sol.x.begin() + n);
  out.alpha_half_integral = is_half_integral(out.alpha);
  if (out.z <= 1 && !out.alpha_half_integral) {
    if (auto snapped = find_half_integral_alpha(s, out.z)) {
      out.alpha = *snapped;
      out.alpha_half_integral = true;
    }
  }
  return out;
}

}  // namespace ilsr
