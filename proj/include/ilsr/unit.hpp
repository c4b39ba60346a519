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
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ilsr/horn.hpp"
#include "ilsr/ils1.hpp"
#include "ilsr/model.hpp"
#include "ilsr/tvpi.hpp"

namespace ilsr {

// Unit systems: A over {0, +-1}. Components can have diameter Theta(d*n),
// exponential in the input size, so the polynomial solvers here answer and
// witness through run-length compressed paths instead of explicit steps.

inline bool is_unit(const ILSInstance& inst) {
  for (const auto& row : inst.coef)
    for (const auto& a : row)
      if (!a.is_zero() && a != 1 && a != -1) return false;
  return true;
}

/// One move = the listed coordinates stepped by one unit each, in order, the
/// whole round repeated `repeat` times. Every unit step of the expansion is
/// feasible; the compressed form stays polynomial while the expansion may be
/// exponential in log d.
struct CompressedMove {
  std::vector<int> coords;
  std::vector<int> dirs;  // +1 / -1, parallel to coords
  std::int64_t repeat = 0;
};

struct CompressedPath {
  std::vector<CompressedMove> moves;

  Int expanded_length() const {
    Int total = 0;
    for (const auto& m : moves) total += Int(m.repeat) * Int(m.coords.size());
    return total;
  }
};

/// Runs the expansion from `start`, checking every unit step. Returns the
/// endpoint; throws on any infeasible or out-of-domain intermediate.
inline Assignment walk_compressed(const ILSInstance& inst, const Assignment& start,
                                  const CompressedPath& path) {
  check_dimensions(inst, start);
  if (!in_domain(inst, start) || !is_feasible(inst, start))
    throw std::invalid_argument("compressed walk must start feasible");
  Assignment cur = start;
  std::vector<Rational> slack(inst.rows());
  for (int i = 0; i < inst.rows(); ++i) slack[i] = row_slack(inst, i, cur);
  // rows touching each column, to keep steps O(column degree)
  std::vector<std::vector<int>> rows_of(inst.vars());
  for (int i = 0; i < inst.rows(); ++i)
    for (int j = 0; j < inst.vars(); ++j)
      if (!inst.coef[i][j].is_zero()) rows_of[j].push_back(i);

  for (const auto& m : path.moves) {
    if (m.coords.size() != m.dirs.size() || m.repeat < 0)
      throw std::invalid_argument("malformed compressed move");
    for (std::int64_t rep = 0; rep < m.repeat; ++rep) {
      for (std::size_t k = 0; k < m.coords.size(); ++k) {
        int j = m.coords[k], dir = m.dirs[k];
        cur[j] += dir;
        if (cur[j] < 0 || cur[j] > inst.domain_bound)
          throw std::runtime_error("compressed step leaves the domain");
        for (int i : rows_of[j]) {
          slack[i] += dir > 0 ? inst.coef[i][j] : -inst.coef[i][j];
          if (slack[i] < 0) throw std::runtime_error("compressed step is infeasible");
        }
      }
    }
  }
  return cur;
}

/// Explicit expansion for small cases; no feasibility checks.
inline PathWitness expand_compressed(const Assignment& start, const CompressedPath& path) {
  PathWitness w;
  w.steps.push_back(start);
  Assignment cur = start;
  for (const auto& m : path.moves)
    for (std::int64_t rep = 0; rep < m.repeat; ++rep)
      for (std::size_t k = 0; k < m.coords.size(); ++k) {
        cur[m.coords[k]] += m.dirs[k];
        w.steps.push_back(cur);
      }
  return w;
}

// Serialization: one move per line, "U={j,...} dir={+,-,...} p=<count>",
// coordinates 1-based.
inline void write_compressed(const CompressedPath& path, std::ostream& out) {
  out << "cpath\n";
  for (const auto& m : path.moves) {
    out << "U={";
    for (std::size_t k = 0; k < m.coords.size(); ++k)
      out << (k ? "," : "") << (m.coords[k] + 1);
    out << "} dir={";
    for (std::size_t k = 0; k < m.dirs.size(); ++k)
      out << (k ? "," : "") << (m.dirs[k] > 0 ? '+' : '-');
    out << "} p=" << m.repeat << '\n';
  }
}

inline CompressedPath read_compressed(std::istream& in) {
  std::string line;
  bool header = false;
  CompressedPath path;
  auto fail = [](const std::string& l) {
    throw std::invalid_argument("bad compressed move line: " + l);
  };
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::string body = line.substr(a);
    if (!header) {
      if (body != "cpath") throw std::invalid_argument("expected 'cpath' header");
      header = true;
      continue;
    }
    CompressedMove m;
    std::size_t u0 = body.find("U={"), u1 = body.find('}', u0);
    std::size_t d0 = body.find("dir={", u1), d1 = body.find('}', d0);
    std::size_t p0 = body.find("p=", d1);
    if (u0 == std::string::npos || u1 == std::string::npos || d0 == std::string::npos ||
        d1 == std::string::npos || p0 == std::string::npos)
      fail(line);
    auto split = [](const std::string& str) {
      std::vector<std::string> parts;
      std::string cur;
      for (char c : str) {
        if (c == ',') {
          parts.push_back(cur);
          cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
          cur += c;
        }
      }
      if (!cur.empty()) parts.push_back(cur);
      return parts;
    };
    for (const auto& tok : split(body.substr(u0 + 3, u1 - u0 - 3)))
      m.coords.push_back(std::stoi(tok) - 1);
    for (const auto& tok : split(body.substr(d0 + 5, d1 - d0 - 5))) {
      if (tok != "+" && tok != "-") fail(line);
      m.dirs.push_back(tok == "+" ? 1 : -1);
    }
    m.repeat = std::stoll(body.substr(p0 + 2));
    if (m.coords.size() != m.dirs.size()) fail(line);
    path.moves.push_back(std::move(m));
  }
  if (!header) throw std::invalid_argument("missing 'cpath' header");
  return path;
}

namespace detail_unit {

/// a*x >= b with A unit and x integral is a*x >= ceil(b); integral rhs keeps
/// the tightness tests below exact.
inline ILSInstance ceil_rhs(const ILSInstance& inst) {
  ILSInstance out = inst;
  for (auto& b : out.rhs) b = Rational(rceil(b));
  return out;
}

/// Coordinate order in which a depth-one monotone descent changed its
/// coordinates; each changes at most once.
inline std::vector<int> change_order(const PathWitness& path) {
  std::vector<int> order;
  for (std::size_t k = 1; k < path.steps.size(); ++k)
    for (std::size_t j = 0; j < path.steps[k].size(); ++j)
      if (path.steps[k][j] != path.steps[k - 1][j]) order.push_back(static_cast<int>(j));
  return order;
}

}  // namespace detail_unit

/// Component minimum of a unit Horn system in time polynomial in n, m and
/// log d: each round finds the depth-one box minimum under the current
/// freezes, jumps the changed set U down by the largest feasible multiple,
/// then freezes coordinates that hit zero or make a positive row tight.
inline std::pair<Assignment, CompressedPath> unit_horn_min(const ILSInstance& raw,
                                                           const Assignment& s) {
  if (!is_unit(raw) || !is_horn(raw))
    throw std::invalid_argument("unit_horn_min needs a unit Horn instance");
  check_dimensions(raw, s);
  if (!in_domain(raw, s) || !is_feasible(raw, s))
    throw std::invalid_argument("start must be feasible");
  ILSInstance inst = detail_unit::ceil_rhs(raw);

  int n = inst.vars();
  std::vector<bool> frozen(n, false);
  Assignment u = s;
  CompressedPath out;
  int frozen_count = 0;
  for (int round = 0; round <= n + 1; ++round) {
    if (frozen_count == n) return {u, std::move(out)};

    // depth-one box around u: frozen coordinates pinned, others may drop 1
    ILSInstance box = inst;
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> low(n, Rational(0)), high(n, Rational(0));
      low[j] = 1;
      high[j] = -1;
      box.coef.push_back(low);
      box.rhs.push_back(Rational(u[j] - (frozen[j] ? 0 : 1)));
      box.coef.push_back(high);
      box.rhs.push_back(Rational(-u[j]));
    }
    auto [box_min, box_path] = descend_to_min(box, u);

    std::vector<int> changed = detail_unit::change_order(box_path);
    if (changed.empty()) return {u, std::move(out)};

    // largest k with u - k*e_U feasible: domain caps it at min u_j over U,
    // rows with positive step delta cap it at floor(slack/delta)
    std::int64_t jump = inst.domain_bound;
    for (int j : changed) jump = std::min(jump, u[j]);
    for (int i = 0; i < inst.rows(); ++i) {
      Rational delta = 0;
      for (int j : changed) delta += inst.coef[i][j];
      if (delta > 0) {
        Rational k = row_slack(inst, i, u) / delta;
        Int cap = rfloor(k);
        if (Int(jump) > cap) jump = to_int64(cap);
      }
    }
    for (int j : changed) u[j] -= jump;
    out.moves.push_back(CompressedMove{changed, std::vector<int>(changed.size(), -1), jump});

    // freeze everything outside U, plus U coordinates now at zero or pinned
    // by a tight positive row whose negative columns all sit outside U
    std::vector<bool> in_u(n, false);
    for (int j : changed) in_u[j] = true;
    std::vector<bool> next_frozen(n, false);
    for (int j = 0; j < n; ++j)
      if (!in_u[j]) next_frozen[j] = true;
    for (int j : changed) {
      if (u[j] == 0) {
        next_frozen[j] = true;
        continue;
      }
      for (int i = 0; i < inst.rows(); ++i) {
        if (inst.coef[i][j] != 1) continue;
        bool negatives_outside = true;
        for (int k = 0; k < n; ++k)
          if (inst.coef[i][k] == -1 && in_u[k]) { negatives_outside = false; break; }
        if (negatives_outside && row_slack(inst, i, u).is_zero()) {
          next_frozen[j] = true;
          break;
        }
      }
    }
    frozen = std::move(next_frozen);
    frozen_count = static_cast<int>(std::count(frozen.begin(), frozen.end(), true));
  }
  throw std::logic_error("unit Horn descent exceeded its round bound");
}

/// Unit TVPI reconfiguration in polynomial time. After flipping so that
/// s >= t coordinatewise, reachability of t from s is equivalent to the
/// first ladder rung u^1 = max(s - 1, t) being reachable from s, decided on
/// the two-values-per-coordinate box; the full witness replays the rung
/// pattern with coordinates retiring as they reach t.
inline std::pair<bool, std::optional<CompressedPath>> utvpi_reconfigure(
    const ILSInstance& inst, const Assignment& s, const Assignment& t) {
  if (!is_unit(inst) || !is_tvpi(inst))
    throw std::invalid_argument("utvpi_reconfigure needs a unit TVPI instance");
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("endpoints must be feasible");
  if (s == t) return {true, CompressedPath{}};

  int n = inst.vars();
  std::vector<bool> flips(n, false);
  for (int j = 0; j < n; ++j) flips[j] = s[j] < t[j];
  ILSInstance work = flip_columns(inst, flips);
  Assignment sw = flip_points(inst, flips, s);
  Assignment tw = flip_points(inst, flips, t);

  std::vector<std::int64_t> delta(n);
  std::int64_t p = 0;
  for (int j = 0; j < n; ++j) {
    delta[j] = sw[j] - tw[j];
    p = std::max(p, delta[j]);
  }

  // box between u1 = max(s - 1, t) and u0 = s, one bit per coordinate
  Assignment u1(n);
  for (int j = 0; j < n; ++j) u1[j] = std::max(sw[j] - 1, tw[j]);
  std::vector<std::vector<Rational>> coef;
  std::vector<Rational> rhs;
  for (int i = 0; i < work.rows(); ++i) {
    Rational base = work.rhs[i];
    for (int j = 0; j < n; ++j)
      if (!work.coef[i][j].is_zero() && u1[j] != 0) base -= work.coef[i][j] * u1[j];
    coef.push_back(work.coef[i]);
    rhs.push_back(base);
  }
  for (int j = 0; j < n; ++j) {
    if (sw[j] != u1[j]) continue;  // free bit only where u0 and u1 differ
    std::vector<Rational> pin(n, Rational(0));
    pin[j] = -1;
    coef.push_back(std::move(pin));
    rhs.push_back(Rational(0));
  }
  ILSInstance box(std::move(coef), std::move(rhs), 1, n);
  Assignment box_s(n), box_t(n, 0);
  for (int j = 0; j < n; ++j) box_s[j] = sw[j] - u1[j];
  auto [ok, box_path] = tvpi_reconfigure(box, box_s, box_t);
  if (!ok) return {false, std::nullopt};

  // phase the ladder by the distinct retirement thresholds
  std::vector<int> order = detail_unit::change_order(*box_path);
  std::vector<std::int64_t> thresholds;
  for (int j : order) thresholds.push_back(delta[j]);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  CompressedPath out;
  std::int64_t prev = 0;
  for (std::int64_t cut : thresholds) {
    CompressedMove m;
    for (int j : order)
      if (delta[j] > prev) {
        m.coords.push_back(j);
        m.dirs.push_back(flips[j] ? 1 : -1);
      }
    m.repeat = cut - prev;
    out.moves.push_back(std::move(m));
    prev = cut;
  }
  return {true, std::move(out)};
}

/// Decomposition solver for unit instances of index <= 1; same two stages as
/// the general solver, with the polynomial subroutines above and a
/// compressed witness.
inline std::pair<bool, std::optional<CompressedPath>> unit_ils1_solve(const ILSInstance& inst,
                                                                      const Assignment& s,
                                                                      const Assignment& t) {
  if (!is_unit(inst)) throw std::invalid_argument("unit_ils1_solve needs a unit instance");
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("endpoints must be feasible");
  if (s == t) return {true, CompressedPath{}};

  QHPartition p = compute_qh_partition(inst);
  ILSInstance normalized = flip_columns(inst, p.flipped);
  Assignment sn = flip_points(inst, p.flipped, s);
  Assignment tn = flip_points(inst, p.flipped, t);

  Assignment x_h;
  CompressedPath s_h_moves, t_h_moves;
  if (!p.h_vars.empty()) {
    ILSInstance horn_side = detail_ils1::sub_instance(normalized, p.s_rows, p.h_vars);
    auto [smin, smoves] = unit_horn_min(horn_side, detail_ils1::restrict_to(sn, p.h_vars));
    auto [tmin, tmoves] = unit_horn_min(horn_side, detail_ils1::restrict_to(tn, p.h_vars));
    if (smin != tmin) return {false, std::nullopt};
    x_h = smin;
    s_h_moves = std::move(smoves);
    t_h_moves = std::move(tmoves);
  }

  CompressedPath q_moves;
  if (!p.q_vars.empty()) {
    auto rhs = detail_ils1::q_side_rhs(normalized, p, x_h);
    ILSInstance q_side = detail_ils1::sub_instance(normalized, p.sbar_rows, p.q_vars, &rhs);
    auto [ok, moves] = utvpi_reconfigure(q_side, detail_ils1::restrict_to(sn, p.q_vars),
                                         detail_ils1::restrict_to(tn, p.q_vars));
    if (!ok) return {false, std::nullopt};
    q_moves = std::move(*moves);
  }

  // stitch the three stages, translating sub-indices and undoing flips
  CompressedPath out;
  auto push_mapped = [&](const CompressedMove& m, const std::vector<int>& cols,
                         bool invert) {
    CompressedMove full;
    full.repeat = m.repeat;
    full.coords.reserve(m.coords.size());
    for (std::size_t k = 0; k < m.coords.size(); ++k) {
      int col = cols[m.coords[k]];
      int dir = m.dirs[k];
      if (invert) dir = -dir;
      if (p.flipped[col]) dir = -dir;
      full.coords.push_back(col);
      full.dirs.push_back(dir);
    }
    if (invert) {
      std::reverse(full.coords.begin(), full.coords.end());
      std::reverse(full.dirs.begin(), full.dirs.end());
    }
    out.moves.push_back(std::move(full));
  };
  for (const auto& m : s_h_moves.moves) push_mapped(m, p.h_vars, false);
  for (const auto& m : q_moves.moves) push_mapped(m, p.q_vars, false);
  for (auto it = t_h_moves.moves.rbegin(); it != t_h_moves.moves.rend(); ++it)
    push_mapped(*it, p.h_vars, true);
  return {true, std::move(out)};
}

}  // namespace ilsr
