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
#include <sstream>
#include <string>
#include <vector>

#include "ilsr/model.hpp"

namespace ilsr {

// Instance file: first data line "m n d", then m lines
// "a_1 a_2 ... a_n >= b" with integer or p/q tokens. '#' starts a comment
// line; blank lines are skipped.

struct parse_error : std::runtime_error {
  int line;
  parse_error(int ln, const std::string& what)
      : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

namespace detail {

inline bool content_line(const std::string& raw, std::string& out) {
  std::size_t i = raw.find_first_not_of(" \t\r");
  if (i == std::string::npos || raw[i] == '#') return false;
  out = raw.substr(i);
  return true;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

inline std::int64_t parse_count(const std::string& tok, int ln, const char* what) {
  try {
    Rational q = parse_rational(tok);
    if (denominator(q) != 1) throw std::invalid_argument("fractional");
    return to_int64(numerator(q));
  } catch (const std::exception&) {
    throw parse_error(ln, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace detail

inline ILSInstance parse_instance(std::istream& in) {
  std::string raw, line;
  int ln = 0;
  int m = -1, n = -1;
  std::int64_t d = 0;
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  while (std::getline(in, raw)) {
    ++ln;
    if (!detail::content_line(raw, line)) continue;
    auto toks = detail::tokens_of(line);
    if (m < 0) {
      if (toks.size() != 3) throw parse_error(ln, "header must be 'm n d'");
      std::int64_t mv = detail::parse_count(toks[0], ln, "row count");
      std::int64_t nv = detail::parse_count(toks[1], ln, "variable count");
      d = detail::parse_count(toks[2], ln, "domain bound");
      if (mv < 0) throw parse_error(ln, "row count must be >= 0");
      if (nv < 1) throw parse_error(ln, "variable count must be >= 1");
      if (d < 1) throw parse_error(ln, "domain bound must be >= 1");
      m = static_cast<int>(mv);
      n = static_cast<int>(nv);
      continue;
    }
    if (static_cast<int>(coef.size()) == m) throw parse_error(ln, "extra row after all m rows");
    if (toks.size() != static_cast<std::size_t>(n) + 2)
      throw parse_error(ln, "expected " + std::to_string(n) + " coefficients, '>=', rhs");
    if (toks[n] != ">=") throw parse_error(ln, "expected '>=' before the right-hand side");
    std::vector<Rational> row;
    row.reserve(n);
    try {
      for (int j = 0; j < n; ++j) row.push_back(parse_rational(toks[j]));
      rhs.push_back(parse_rational(toks[n + 1]));
    } catch (const std::exception& e) {
      throw parse_error(ln, e.what());
    }
    coef.push_back(std::move(row));
  }
  if (m < 0) throw parse_error(ln, "missing header line");
  if (static_cast<int>(coef.size()) != m)
    throw parse_error(ln, "expected " + std::to_string(m) + " rows, got " +
                              std::to_string(coef.size()));
  return ILSInstance(std::move(coef), std::move(rhs), d, n);
}

inline ILSInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline void serialize_instance(const ILSInstance& inst, std::ostream& out) {
  out << inst.rows() << ' ' << inst.vars() << ' ' << inst.domain_bound << '\n';
  for (int i = 0; i < inst.rows(); ++i) {
    for (int j = 0; j < inst.vars(); ++j) out << rational_str(inst.coef[i][j]) << ' ';
    out << ">= " << rational_str(inst.rhs[i]) << '\n';
  }
}

inline std::string serialize_instance(const ILSInstance& inst) {
  std::ostringstream out;
  serialize_instance(inst, out);
  return out.str();
}

/// Assignment text: whitespace-separated integers. When `expected` >= 0 the
/// count must match it exactly.
inline Assignment parse_assignment(const std::string& text, int expected = -1) {
  std::istringstream in(text);
  Assignment x;
  std::string tok;
  while (in >> tok) {
    try {
      Rational q = parse_rational(tok);
      if (denominator(q) != 1) throw std::invalid_argument("fractional");
      x.push_back(to_int64(numerator(q)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad assignment value '" + tok + "'");
    }
  }
  if (expected >= 0 && static_cast<int>(x.size()) != expected)
    throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                " values, expected " + std::to_string(expected));
  return x;
}

inline std::string format_assignment(const Assignment& x) {
  std::string out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) out += ' ';
    out += std::to_string(x[j]);
  }
  return out;
}

// Witness file: header "path", then one assignment per line.
inline void write_path(const PathWitness& w, std::ostream& out) {
  out << "path\n";
  for (const auto& step : w.steps) out << format_assignment(step) << '\n';
}

inline PathWitness read_path(std::istream& in, int n) {
  std::string raw, line;
  PathWitness w;
  bool header = false;
  while (std::getline(in, raw)) {
    if (!detail::content_line(raw, line)) continue;
    if (!header) {
      auto toks = detail::tokens_of(line);
      if (toks.size() != 1 || toks[0] != "path")
        throw std::invalid_argument("expected 'path' header");
      header = true;
      continue;
    }
    w.steps.push_back(parse_assignment(line, n));
  }
  if (!header) throw std::invalid_argument("missing 'path' header");
  return w;
}

}  // namespace ilsr
