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

#include <stdexcept>
#include <vector>

#include "ilsr/cnf.hpp"
#include "ilsr/model.hpp"

namespace ilsr {

// Instance families and gadgets: the monotone chain (index one, diameter
// d*n), the hypercube (index zero), the equality chain (index one,
// disconnected), the clause chain that lowers a 3-CNF's index to any
// gamma > 1, and the exponential-diameter family with its three-variable
// structural expression.

/// x_j - x_{j+1} >= 0 and x_{j+1} - x_j >= -1 for consecutive pairs.
inline ILSInstance gen_chain(int n, std::int64_t d) {
  if (n < 2 || d < 1) throw std::invalid_argument("chain needs n >= 2, d >= 1");
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<Rational> up(n, Rational(0)), down(n, Rational(0));
    up[j] = 1;
    up[j + 1] = -1;
    down[j] = -1;
    down[j + 1] = 1;
    coef.push_back(std::move(up));
    rhs.push_back(Rational(0));
    coef.push_back(std::move(down));
    rhs.push_back(Rational(-1));
  }
  return ILSInstance(std::move(coef), std::move(rhs), d, n);
}

/// -x_j >= -1 over d = 1; the solution set is the whole cube {0,1}^n.
inline ILSInstance gen_hypercube(int n) {
  if (n < 1) throw std::invalid_argument("hypercube needs n >= 1");
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> row(n, Rational(0));
    row[j] = -1;
    coef.push_back(std::move(row));
    rhs.push_back(Rational(-1));
  }
  return ILSInstance(std::move(coef), std::move(rhs), 1, n);
}

/// x_1 = x_2 in two rows; d+1 isolated solutions.
inline ILSInstance gen_equality_chain(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("equality chain needs d >= 1");
  std::vector<std::vector<Rational>> coef{{Rational(1), Rational(-1)},
                                          {Rational(-1), Rational(1)}};
  std::vector<Rational> rhs{Rational(0), Rational(0)};
  return ILSInstance(std::move(coef), std::move(rhs), d, 2);
}

struct GadgetParams {
  Rational gamma;
  Rational epsilon;
  std::int64_t t;

  static GadgetParams from_gamma(const Rational& gamma) {
    if (gamma <= 1) throw std::invalid_argument("gadget needs gamma > 1");
    GadgetParams p;
    p.gamma = gamma;
    p.epsilon = gamma - 1;
    p.t = to_int64(rceil(1 / p.epsilon));
    return p;
  }
};

/// Replaces each 3-literal clause (l1 v l2 v l3) by the chain
///   (l1 v !y_0)(y_0 v !y_1)...(y_{t-1} v !y_t)
///   (y_t v l2 v z_t)
///   (!z_t v z_{t-1})...(!z_1 v z_0)(!z_0 v l3)
/// with 2(1+t) fresh variables per clause, appended clause-major. The output
/// projects onto the original variables exactly, with connected extension
/// fibers, and its index is at most gamma.
inline CnfFormula expand_sat_gadget(const CnfFormula& phi3, const GadgetParams& params) {
  phi3.validate();
  for (const auto& c : phi3.clauses) {
    if (c.size() != 3) throw std::invalid_argument("gadget input must be a 3-CNF");
    if (std::abs(c[0]) == std::abs(c[1]) || std::abs(c[0]) == std::abs(c[2]) ||
        std::abs(c[1]) == std::abs(c[2]))
      throw std::invalid_argument("gadget clauses need three distinct variables");
  }
  const std::int64_t t = params.t;
  CnfFormula out;
  out.num_vars = phi3.num_vars +
                 static_cast<int>(2 * (1 + t) * static_cast<std::int64_t>(phi3.clauses.size()));
  for (std::size_t i = 0; i < phi3.clauses.size(); ++i) {
    const auto& c = phi3.clauses[i];
    int base = phi3.num_vars + static_cast<int>(i * 2 * (1 + t));
    auto y = [&](std::int64_t k) { return base + static_cast<int>(k) + 1; };
    auto z = [&](std::int64_t k) { return base + static_cast<int>(t + 1 + k) + 1; };
    out.clauses.push_back({c[0], -y(0)});
    for (std::int64_t k = 0; k + 1 <= t; ++k) out.clauses.push_back({y(k), -y(k + 1)});
    out.clauses.push_back({y(t), c[1], z(t)});
    for (std::int64_t k = t - 1; k >= 0; --k) out.clauses.push_back({-z(k + 1), z(k)});
    out.clauses.push_back({-z(0), c[2]});
  }
  return out;
}

struct DiameterFamily {
  ILSInstance instance;
  Assignment s;            // all zeros
  Assignment t;            // (d, d, 2, ..., 2)
  Int recurrence_length;   // l(2) = 2d, l(n) = 3*l(n-2) + 4
};

/// Two-variable seed {-x1+x2 >= 0, x1-x2 >= -1}; each growth step appends a
/// fresh chain pair plus the coupling rows that pin the old block to its
/// endpoints at the two splice levels. The component of s is a single path.
inline DiameterFamily gen_diameter_family(int n, std::int64_t d) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("family needs even n >= 2");
  if (d < 2) throw std::invalid_argument("family needs d >= 2");
  std::vector<std::vector<Rational>> coef{{Rational(-1), Rational(1)},
                                          {Rational(1), Rational(-1)}};
  std::vector<Rational> rhs{Rational(0), Rational(-1)};
  int cur = 2;
  auto widen = [&](int width) {
    for (auto& row : coef) row.resize(width, Rational(0));
  };
  while (cur < n) {
    cur += 2;
    widen(cur);
    int a = cur - 2, b = cur - 1;  // the two new columns
    auto fresh = [&] { return std::vector<Rational>(cur, Rational(0)); };
    {
      auto row = fresh();
      row[a] = -1;
      row[b] = 1;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(0));
    }
    {
      auto row = fresh();
      row[a] = 1;
      row[b] = -1;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(-1));
    }
    for (int j = 0; j < 2; ++j) {
      auto row = fresh();
      row[j] = 1;
      row[a] = Rational(2) * d;
      row[b] = Rational(-d);
      coef.push_back(std::move(row));
      rhs.push_back(Rational(0));
    }
    for (int j = 2; j < cur - 2; ++j) {
      auto row = fresh();
      row[j] = 1;
      row[a] = 4;
      row[b] = -2;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(0));
    }
    for (int j = 0; j < cur - 2; ++j) {
      auto row = fresh();
      row[j] = -1;
      row[a] = 2;
      row[b] = -4;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(-6));
    }
  }
  DiameterFamily fam;
  fam.instance = ILSInstance(std::move(coef), std::move(rhs), d, n);
  fam.s.assign(n, 0);
  fam.t.assign(n, 2);
  fam.t[0] = d;
  fam.t[1] = d;
  fam.recurrence_length = Int(2) * d;
  for (int k = 4; k <= n; k += 2) fam.recurrence_length = 3 * fam.recurrence_length + 4;
  return fam;
}

/// Structural expression of rows with at most three nonzeros: the first
/// nonzero feeds a y-chain, the last a z-chain, the optional middle one sits
/// in the splice row; 2(1+t) fresh variables per row. The projection onto
/// the original variables equals the input's solution set and the index of
/// the output is at most gamma.
inline ILSInstance expand_ils_gadget(const DiameterFamily& fam, const GadgetParams& params) {
  const ILSInstance& in = fam.instance;
  const std::int64_t t = params.t;
  int n = in.vars();
  std::vector<std::vector<int>> nz(in.rows());
  for (int i = 0; i < in.rows(); ++i) {
    for (int j = 0; j < n; ++j)
      if (!in.coef[i][j].is_zero()) nz[i].push_back(j);
    if (nz[i].size() > 3)
      throw std::invalid_argument("row " + std::to_string(i) + " has more than 3 nonzeros");
  }
  int out_n = n + static_cast<int>(2 * (1 + t) * static_cast<std::int64_t>(in.rows()));
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  auto fresh = [&] { return std::vector<Rational>(out_n, Rational(0)); };
  for (int i = 0; i < in.rows(); ++i) {
    int base = n + static_cast<int>(static_cast<std::int64_t>(i) * 2 * (1 + t));
    auto y = [&](std::int64_t k) { return base + static_cast<int>(k); };
    auto z = [&](std::int64_t k) { return base + static_cast<int>(t + 1 + k); };
    if (nz[i].empty()) {  // constant row passes through
      coef.push_back(fresh());
      rhs.push_back(in.rhs[i]);
      continue;
    }
    int c1 = nz[i].front();
    Rational a1 = in.coef[i][c1];
    int c3 = -1;
    Rational a3 = 0;
    if (nz[i].size() >= 2) {
      c3 = nz[i].back();
      a3 = in.coef[i][c3];
    }
    int c2 = -1;
    Rational a2 = 0;
    if (nz[i].size() == 3) {
      c2 = nz[i][1];
      a2 = in.coef[i][c2];
    }
    {
      auto row = fresh();
      row[c1] = a1;
      row[y(0)] = -a1;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(0));
    }
    for (std::int64_t k = 0; k + 1 <= t; ++k) {
      auto row = fresh();
      row[y(k)] = a1;
      row[y(k + 1)] = -a1;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(0));
    }
    {
      auto row = fresh();
      row[y(t)] = a1;
      if (c2 >= 0) row[c2] = a2;
      if (c3 >= 0) row[z(t)] = a3;
      coef.push_back(std::move(row));
      rhs.push_back(in.rhs[i]);
    }
    if (c3 >= 0) {
      for (std::int64_t k = 0; k + 1 <= t; ++k) {
        auto row = fresh();
        row[z(k + 1)] = -a3;
        row[z(k)] = a3;
        coef.push_back(std::move(row));
        rhs.push_back(Rational(0));
      }
      auto row = fresh();
      row[z(0)] = -a3;
      row[c3] = a3;
      coef.push_back(std::move(row));
      rhs.push_back(Rational(0));
    }
  }
  return ILSInstance(std::move(coef), std::move(rhs), in.domain_bound, out_n);
}

}  // namespace ilsr
