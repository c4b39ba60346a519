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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ilsr {

// Exact arithmetic everywhere: matrix data is arbitrary-precision rational,
// kept in lowest terms with positive denominator by the backend.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& q) { return numerator(q); }
inline Int rational_den(const Rational& q) { return denominator(q); }

/// Largest integer <= q.
inline Int rfloor(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int quot = n / d;
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

/// Smallest integer >= q.
inline Int rceil(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int quot = n / d;
  if (n > 0 && quot * d != n) ++quot;
  return quot;
}

inline std::int64_t to_int64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<std::int64_t>();
}

/// Parses "p", "-p" or "p/q" with q > 0. Anything else is rejected.
inline Rational parse_rational(std::string_view token) {
  auto bad = [&] {
    throw std::invalid_argument("not a rational token: '" + std::string(token) + "'");
  };
  if (token.empty()) bad();
  std::size_t slash = token.find('/');
  auto parse_int = [&](std::string_view part, bool allow_sign) {
    if (part.empty()) bad();
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) bad();
    for (std::size_t k = i; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') bad();
    return Int(std::string(part));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(token, true));
  Int num = parse_int(token.substr(0, slash), true);
  Int den = parse_int(token.substr(slash + 1), false);
  if (den == 0) bad();
  return Rational(num, den);
}

/// Lowest-terms text form: "p" or "p/q".
inline std::string rational_str(const Rational& q) { return q.str(); }

}  // namespace ilsr
