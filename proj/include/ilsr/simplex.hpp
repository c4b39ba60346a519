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
#include <vector>

#include "ilsr/rational.hpp"

namespace ilsr::lp {

// Two-phase primal simplex over exact rationals with Bland's anticycling
// rule. Sized for the tiny LPs this project solves; the dense tableau is the
// whole state. Artificial variables may leave the basis but never re-enter.

enum class Status { optimal, infeasible, unbounded };

struct Problem {
  // minimize obj.x  subject to  lhs.x <= rhs, x >= 0
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  std::vector<Rational> obj;
};

struct Solution {
  Status status = Status::optimal;
  Rational value;
  std::vector<Rational> x;
};

namespace detail {

class Tableau {
 public:
  explicit Tableau(const Problem& p) : n_orig_(p.obj.size()), m_(p.lhs.size()) {
    // Equality form, one slack per row; rows with negative rhs are negated
    // and receive an artificial variable.
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (p.rhs[i] < 0) ++n_art;
    first_art_ = n_orig_ + m_;
    cols_ = first_art_ + n_art;
    tab_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.assign(m_, -1);

    std::size_t art = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      bool neg = p.rhs[i] < 0;
      Rational sign = neg ? Rational(-1) : Rational(1);
      for (std::size_t j = 0; j < n_orig_; ++j) tab_[i][j] = sign * p.lhs[i][j];
      tab_[i][n_orig_ + i] = sign;
      tab_[i][cols_] = sign * p.rhs[i];
      if (neg) {
        std::size_t a = first_art_ + art++;
        tab_[i][a] = 1;
        basis_[i] = static_cast<int>(a);
      } else {
        basis_[i] = static_cast<int>(n_orig_ + i);
      }
    }
  }

  Solution solve(const Problem& p) {
    if (cols_ > first_art_) {
      std::vector<Rational> phase1(cols_);
      for (std::size_t j = first_art_; j < cols_; ++j) phase1[j] = 1;
      auto v = run(phase1);
      if (!v || *v > 0) return {Status::infeasible, {}, {}};
      evict_artificials();
    }
    std::vector<Rational> cost(cols_);
    for (std::size_t j = 0; j < n_orig_; ++j) cost[j] = p.obj[j];
    if (!run(cost)) return {Status::unbounded, {}, {}};
    Solution s;
    s.status = Status::optimal;
    s.x.assign(n_orig_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_orig_)
        s.x[basis_[i]] = tab_[i][cols_];
    s.value = 0;
    for (std::size_t j = 0; j < n_orig_; ++j)
      if (!p.obj[j].is_zero()) s.value += p.obj[j] * s.x[j];
    return s;
  }

 private:
  void pivot(std::size_t r, std::size_t c, std::vector<Rational>& red, Rational& shift) {
    Rational piv = tab_[r][c];
    for (auto& v : tab_[r]) v /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || tab_[i][c].is_zero()) continue;
      Rational f = tab_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!tab_[r][j].is_zero()) tab_[i][j] -= f * tab_[r][j];
    }
    if (!red[c].is_zero()) {
      Rational f = red[c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (!tab_[r][j].is_zero()) red[j] -= f * tab_[r][j];
      shift -= f * tab_[r][cols_];
      red[c] = 0;
    }
    basis_[r] = static_cast<int>(c);
  }

  // Minimizes cost over the current basis; nullopt when unbounded below.
  std::optional<Rational> run(const std::vector<Rational>& cost) {
    std::vector<Rational> red = cost;
    Rational shift = 0;  // current objective value is -shift
    for (std::size_t i = 0; i < m_; ++i) {
      int b = basis_[i];
      if (b >= 0 && !cost[b].is_zero()) {
        Rational f = cost[b];
        for (std::size_t j = 0; j < cols_; ++j)
          if (!tab_[i][j].is_zero()) red[j] -= f * tab_[i][j];
        shift -= f * tab_[i][cols_];
      }
    }
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < first_art_; ++j)
        if (red[j] < 0) { enter = j; break; }  // Bland: lowest index
      if (enter == cols_) return -shift;
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        if (leave == m_) { leave = i; continue; }
        Rational cur = tab_[i][cols_] / tab_[i][enter];
        Rational best = tab_[leave][cols_] / tab_[leave][enter];
        if (cur < best || (cur == best && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == m_) return std::nullopt;
      pivot(leave, enter, red, shift);
    }
  }

  // Artificials left basic at value zero are pivoted out; a row with no
  // usable column is redundant and retired.
  void evict_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < 0 || static_cast<std::size_t>(basis_[i]) < first_art_) continue;
      std::size_t c = cols_;
      for (std::size_t j = 0; j < first_art_; ++j)
        if (!tab_[i][j].is_zero()) { c = j; break; }
      if (c == cols_) {
        basis_[i] = -1;
        continue;
      }
      std::vector<Rational> dummy(cols_, Rational(0));
      Rational d0 = 0;
      pivot(i, c, dummy, d0);
    }
  }

  std::size_t n_orig_, m_, first_art_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<int> basis_;
};

}  // namespace detail

inline Solution solve(const Problem& p) {
  detail::Tableau t(p);
  return t.solve(p);
}

}  // namespace ilsr::lp
