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
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ilsr/ils1.hpp"
#include "ilsr/io.hpp"
#include "ilsr/model.hpp"
#include "ilsr/tvpi.hpp"

namespace ilsr {

// Disconnection certificates for index <= 1. With a QH-partition fixed and
// the order anchored at the reset target m, a vector w proves that a source
// point cannot reach m when
//   C0: w is feasible,
//   C1: w lies below the source in the anchored order,
//   C2: w is locally minimal (stepping any H coordinate down, or any Q
//       coordinate one unit toward its anchor, leaves the feasible set),
//   C3: w is not below m (some H coordinate exceeds m, or some Q coordinate
//       differs from it).
// Components are closed under the anchored coordinatewise minimum, so the
// source's component minimum would have to be below m otherwise.

struct Certificate {
  Assignment w;             // normalized coordinates
  QHPartition partition;
  Assignment anchor_t;      // normalized image of the original target
  Assignment reset_target;  // m = anchored min of the endpoint pair
};

/// Coordinatewise anchored minimum: plain min on H, median with the anchor
/// on Q.
inline Assignment min_qh(const QHPartition& p, const Assignment& t, const Assignment& x,
                         const Assignment& y) {
  if (x.size() != y.size() || x.size() != t.size())
    throw std::invalid_argument("min_qh arity mismatch");
  Assignment out(x.size());
  for (int j : p.h_vars) out[j] = std::min(x[j], y[j]);
  for (int j : p.q_vars) out[j] = median(t[j], x[j], y[j]);
  return out;
}

namespace detail_cert {

inline bool off_or_infeasible(const ILSInstance& inst, Assignment w, int j, int step) {
  w[j] += step;
  if (w[j] < 0 || w[j] > inst.domain_bound) return true;
  return !is_feasible(inst, w);
}

/// C0-C3 against a normalized instance, source point and anchor m.
inline bool conditions_hold(const ILSInstance& normalized, const QHPartition& p,
                            const Assignment& src, const Assignment& m,
                            const Assignment& w) {
  if (!in_domain(normalized, w) || !is_feasible(normalized, w)) return false;  // C0
  for (int j : p.h_vars)
    if (w[j] > src[j]) return false;  // C1 on H
  for (int j : p.q_vars)
    if (!leq_anchored(m[j], w[j], src[j])) return false;  // C1 on Q
  for (int j : p.h_vars)
    if (w[j] > 0 && !off_or_infeasible(normalized, w, j, -1)) return false;  // C2 on H
  for (int j : p.q_vars) {
    if (w[j] == m[j]) continue;
    int sigma = w[j] > m[j] ? 1 : -1;
    if (!off_or_infeasible(normalized, w, j, -sigma)) return false;  // C2 on Q
  }
  for (int j : p.h_vars)
    if (w[j] > m[j]) return true;  // C3
  for (int j : p.q_vars)
    if (w[j] != m[j]) return true;
  return false;
}

}  // namespace detail_cert

/// True iff the certificate's partition is valid for the instance and w
/// satisfies C0-C3 against the given source endpoint. A passing check proves
/// the source and the reset target are in different components.
inline bool check_certificate(const ILSInstance& inst, const Certificate& cert,
                              const Assignment& source) {
  check_dimensions(inst, source);
  if (static_cast<int>(cert.partition.flipped.size()) != inst.vars()) return false;
  ILSInstance normalized = flip_columns(inst, cert.partition.flipped);
  if (qh_violation(normalized, cert.partition)) return false;
  Assignment src = flip_points(inst, cert.partition.flipped, source);
  if (!in_domain(normalized, src) || !is_feasible(normalized, src)) return false;
  if (cert.w.size() != src.size() || cert.reset_target.size() != src.size()) return false;
  return detail_cert::conditions_hold(normalized, cert.partition, src, cert.reset_target,
                                      cert.w);
}

namespace detail_cert {

// Inner integer feasibility: rows a.w >= rhs plus per-coordinate bounds,
// decided by rational bound propagation and coordinate enumeration. Exact;
// exponential only in the (capped) variable count.

struct IntSystem {
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  std::vector<std::int64_t> lo, hi;
};

inline bool propagate(IntSystem& sys) {
  int n = static_cast<int>(sys.lo.size());
  for (int round = 0; round < 4 * n + 4; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < sys.lhs.size(); ++i) {
      const auto& row = sys.lhs[i];
      for (int j = 0; j < n; ++j) {
        if (row[j].is_zero()) continue;
        Rational rest = 0;
        for (int k = 0; k < n; ++k) {
          if (k == j || row[k].is_zero()) continue;
          rest += row[k] * (row[k] > 0 ? sys.hi[k] : sys.lo[k]);
        }
        Rational need = sys.rhs[i] - rest;  // row[j] * w_j >= need
        if (row[j] > 0) {
          Int b = rceil(need / row[j]);
          if (b > sys.lo[j]) {
            if (b > sys.hi[j]) return false;
            sys.lo[j] = to_int64(b);
            changed = true;
          }
        } else {
          Int b = rfloor(need / row[j]);
          if (b < sys.hi[j]) {
            if (b < sys.lo[j]) return false;
            sys.hi[j] = to_int64(b);
            changed = true;
          }
        }
      }
    }
    for (int j = 0; j < n; ++j)
      if (sys.lo[j] > sys.hi[j]) return false;
    if (!changed) return true;
  }
  return true;
}

inline bool enumerate(const IntSystem& sys, int j, Assignment& w) {
  int n = static_cast<int>(sys.lo.size());
  if (j == n) {
    for (std::size_t i = 0; i < sys.lhs.size(); ++i) {
      Rational v = -sys.rhs[i];
      for (int k = 0; k < n; ++k)
        if (!sys.lhs[i][k].is_zero() && w[k] != 0) v += sys.lhs[i][k] * w[k];
      if (v < 0) return false;
    }
    return true;
  }
  for (std::int64_t v = sys.lo[j]; v <= sys.hi[j]; ++v) {
    IntSystem fixed = sys;
    fixed.lo[j] = fixed.hi[j] = v;
    if (!propagate(fixed)) continue;
    w[j] = v;
    if (enumerate(fixed, j + 1, w)) return true;
  }
  return false;
}

inline std::optional<Assignment> first_integer_point(IntSystem sys) {
  if (!propagate(sys)) return std::nullopt;
  Assignment w(sys.lo.size(), 0);
  if (!enumerate(sys, 0, w)) return std::nullopt;
  return w;
}

/// Searches a certificate for one (source, m) pair by guessing, per
/// coordinate, its region relative to m and one inequality that its C2 step
/// violates; strict rows are made integral by row scaling, so '<' becomes
/// '<= rhs - 1'. Branch order is deterministic.
inline std::optional<Assignment> search_pair(const ILSInstance& normalized,
                                             const QHPartition& p, const Assignment& src,
                                             const Assignment& m) {
  int n = normalized.vars();
  int rows = normalized.rows();
  std::vector<int> kind(n, 0);  // 0 = H, 1 = Q
  for (int j : p.q_vars) kind[j] = 1;

  // per-row integer scaling for the strict constraints
  std::vector<std::vector<Rational>> scaled(rows);
  std::vector<Rational> scaled_rhs(rows);
  for (int i = 0; i < rows; ++i) {
    Int mult = 1;
    for (int j = 0; j < n; ++j) mult = lcm(mult, rational_den(normalized.coef[i][j]));
    mult = lcm(mult, rational_den(normalized.rhs[i]));
    scaled[i].resize(n);
    for (int j = 0; j < n; ++j) scaled[i][j] = normalized.coef[i][j] * mult;
    scaled_rhs[i] = normalized.rhs[i] * mult;
  }

  // region codes per coordinate: 0 = pinned to m_j (H: zero / Q: equal),
  // 1 = active (H: >= 1, needs a violated row; Q: strictly toward src)
  std::vector<int> region(n, 0);
  std::vector<int> sigma(n, 0);  // Q step direction toward m under C2
  for (;;) {
    bool representable = true;
    for (int j = 0; j < n && representable; ++j) {
      if (region[j] == 0) continue;
      if (kind[j] == 1 && src[j] == m[j]) representable = false;  // no strict region
      if (kind[j] == 0 && src[j] == 0) representable = false;     // no positive region
    }
    if (representable) {
      for (int j = 0; j < n; ++j)
        sigma[j] = (kind[j] == 1 && region[j] == 1) ? (src[j] > m[j] ? 1 : -1) : 0;

      IntSystem base;
      base.lo.assign(n, 0);
      base.hi.assign(n, 0);
      bool empty = false;
      for (int j = 0; j < n; ++j) {
        if (kind[j] == 0) {
          if (region[j] == 0) {
            base.lo[j] = base.hi[j] = 0;
          } else {
            base.lo[j] = 1;
            base.hi[j] = src[j];
          }
        } else {
          if (region[j] == 0) {
            base.lo[j] = base.hi[j] = m[j];
          } else if (sigma[j] > 0) {
            base.lo[j] = m[j] + 1;
            base.hi[j] = src[j];
          } else {
            base.lo[j] = src[j];
            base.hi[j] = m[j] - 1;
          }
        }
        if (base.lo[j] > base.hi[j]) empty = true;
      }
      if (!empty) {
        for (int i = 0; i < rows; ++i) {
          base.lhs.push_back(normalized.coef[i]);
          base.rhs.push_back(normalized.rhs[i]);
        }
        std::vector<int> active;
        for (int j = 0; j < n; ++j)
          if (region[j] == 1) active.push_back(j);

        bool q_active = false;
        for (int j : active)
          if (kind[j] == 1) q_active = true;

        // C3 witnesses: any active Q coordinate already differs from m;
        // otherwise one active H coordinate must rise above m_j.
        std::vector<std::optional<int>> c3_choices;
        if (q_active) c3_choices.push_back(std::nullopt);
        for (int j : active)
          if (kind[j] == 0) c3_choices.push_back(j);

        if (!c3_choices.empty() && (active.empty() || rows > 0)) {
          // one violated-row guess per active coordinate
          std::vector<int> guess(active.size(), 0);
          for (;;) {
            for (const auto& c3 : c3_choices) {
              IntSystem sys = base;
              if (c3) {
                std::int64_t need = std::max(sys.lo[*c3], m[*c3] + 1);
                if (need > sys.hi[*c3]) continue;
                sys.lo[*c3] = need;
              }
              for (std::size_t a = 0; a < active.size(); ++a) {
                int j = active[a], i = guess[a];
                int step = kind[j] == 0 ? 1 : sigma[j];
                // scaled[i].(w - step*e_j) < scaled_rhs[i], integral form
                std::vector<Rational> row(n);
                for (int k = 0; k < n; ++k) row[k] = -scaled[i][k];
                Rational bound = -(scaled_rhs[i] + Rational(step) * scaled[i][j] - 1);
                sys.lhs.push_back(std::move(row));
                sys.rhs.push_back(std::move(bound));
              }
              if (auto w = first_integer_point(sys)) return w;
            }
            // advance the guess vector
            std::size_t pos = 0;
            while (pos < active.size() && ++guess[pos] == rows) guess[pos++] = 0;
            if (pos == active.size() || active.empty()) break;
          }
        }
      }
    }
    // next region vector
    int pos = 0;
    while (pos < n && ++region[pos] == 2) region[pos++] = 0;
    if (pos == n) break;
  }
  return std::nullopt;
}

}  // namespace detail_cert

/// Fixed-dimension certificate search. Returns a certificate iff the
/// endpoints are disconnected; the pair (source, m) with m the anchored
/// minimum of {s, t} is tried for source = s, then source = t.
inline std::optional<Certificate> search_certificate_fixed_n(const ILSInstance& inst,
                                                             const Assignment& s,
                                                             const Assignment& t,
                                                             int var_cap = 6) {
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (inst.vars() > var_cap)
    throw std::invalid_argument("instance exceeds the fixed-n cap of " +
                                std::to_string(var_cap) + " variables");
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("endpoints must be feasible");
  if (s == t) return std::nullopt;

  QHPartition p = compute_qh_partition(inst);  // enforces z <= 1
  ILSInstance normalized = flip_columns(inst, p.flipped);
  Assignment sn = flip_points(inst, p.flipped, s);
  Assignment tn = flip_points(inst, p.flipped, t);
  Assignment m = min_qh(p, tn, sn, tn);

  for (const Assignment* src : {&sn, &tn}) {
    if (*src == m) continue;
    if (auto w = detail_cert::search_pair(normalized, p, *src, m)) {
      Certificate cert{*w, p, tn, m};
      if (!check_certificate(inst, cert, *src == sn ? s : t))
        throw std::logic_error("searched certificate failed re-validation");
      return cert;
    }
  }
  return std::nullopt;
}

// Serialization: header, then w, Q, H, flip set and reset target as
// whitespace-separated integers (1-based variable indices).
inline void write_certificate(const Certificate& cert, std::ostream& out) {
  out << "certificate n=" << cert.w.size() << '\n';
  out << "w " << format_assignment(cert.w) << '\n';
  auto write_set = [&](const char* name, const std::vector<int>& v) {
    out << name;
    for (int j : v) out << ' ' << (j + 1);
    out << '\n';
  };
  write_set("Q", cert.partition.q_vars);
  write_set("H", cert.partition.h_vars);
  std::vector<int> flips;
  for (std::size_t j = 0; j < cert.partition.flipped.size(); ++j)
    if (cert.partition.flipped[j]) flips.push_back(static_cast<int>(j));
  write_set("flip", flips);
  out << "reset " << format_assignment(cert.reset_target) << '\n';
}

inline Certificate read_certificate(std::istream& in) {
  std::string line;
  Certificate cert;
  int n = -1;
  auto expect = [&](const std::string& tag) {
    std::string raw;
    do {
      if (!std::getline(in, raw)) throw std::invalid_argument("truncated certificate file");
      std::size_t a = raw.find_first_not_of(" \t\r");
      line = a == std::string::npos ? "" : raw.substr(a);
    } while (line.empty() || line[0] == '#');
    if (line.rfind(tag, 0) != 0)
      throw std::invalid_argument("expected '" + tag + "' in certificate file");
    return line.substr(tag.size());
  };
  {
    std::string rest = expect("certificate n=");
    n = std::stoi(rest);
    if (n < 1) throw std::invalid_argument("bad certificate arity");
  }
  cert.w = parse_assignment(expect("w "), n);
  auto read_set = [&](const std::string& tag) {
    std::istringstream ss(expect(tag));
    std::vector<int> v;
    int j;
    while (ss >> j) {
      if (j < 1 || j > n) throw std::invalid_argument("certificate index out of range");
      v.push_back(j - 1);
    }
    return v;
  };
  cert.partition.q_vars = read_set("Q");
  cert.partition.h_vars = read_set("H");
  auto flips = read_set("flip");
  cert.partition.flipped.assign(n, false);
  for (int j : flips) cert.partition.flipped[j] = true;
  cert.reset_target = parse_assignment(expect("reset "), n);
  cert.anchor_t = cert.reset_target;
  return cert;
}

}  // namespace ilsr
