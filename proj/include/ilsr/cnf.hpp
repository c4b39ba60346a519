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

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilsr/model.hpp"

namespace ilsr {

/// Clauses as DIMACS-style signed 1-based literals.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const {
    for (const auto& c : clauses) {
      if (c.empty()) throw std::invalid_argument("empty clause");
      for (int lit : c)
        if (lit == 0 || std::abs(lit) > num_vars)
          throw std::invalid_argument("literal out of range: " + std::to_string(lit));
    }
  }
};

inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula phi;
  std::string line;
  bool header = false;
  std::vector<int> clause;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      std::string kind;
      int nv = 0, nc = 0;
      if (!(ss >> kind >> nv >> nc) || kind != "cnf")
        throw std::invalid_argument("bad DIMACS problem line");
      phi.num_vars = nv;
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("clause before DIMACS problem line");
    ss.clear();
    ss.str(line);
    int lit;
    while (ss >> lit) {
      if (lit == 0) {
        if (clause.empty()) throw std::invalid_argument("empty clause in DIMACS input");
        phi.clauses.push_back(clause);
        clause.clear();
      } else {
        clause.push_back(lit);
      }
    }
  }
  if (!clause.empty()) phi.clauses.push_back(clause);
  if (!header) throw std::invalid_argument("missing DIMACS problem line");
  phi.validate();
  return phi;
}

inline void write_dimacs(const CnfFormula& phi, std::ostream& out) {
  out << "p cnf " << phi.num_vars << ' ' << phi.clauses.size() << '\n';
  for (const auto& c : phi.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
}

/// Clause (V_{j in P} x_j) v (V_{j in N} !x_j) becomes the row
/// sum_P x_j - sum_N x_j >= 1 - |N| over d = 1. Literal multisets collapse
/// to sets; a variable appearing with both polarities cancels.
inline ILSInstance sat_to_ils(const CnfFormula& phi) {
  phi.validate();
  int n = std::max(phi.num_vars, 1);
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  for (const auto& clause : phi.clauses) {
    std::set<int> pos, neg;
    for (int lit : clause) (lit > 0 ? pos : neg).insert(std::abs(lit) - 1);
    std::vector<Rational> row(n, Rational(0));
    for (int j : pos) row[j] += 1;
    for (int j : neg) row[j] -= 1;
    coef.push_back(std::move(row));
    rhs.push_back(Rational(1) - Rational(neg.size()));
  }
  return ILSInstance(std::move(coef), std::move(rhs), 1, n);
}

}  // namespace ilsr
