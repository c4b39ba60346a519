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
#include <string>

#include "ilsr/certificate.hpp"
#include "ilsr/elimination.hpp"
#include "ilsr/horn.hpp"
#include "ilsr/ils1.hpp"
#include "ilsr/index_lp.hpp"
#include "ilsr/oracle.hpp"
#include "ilsr/tvpi.hpp"
#include "ilsr/unit.hpp"

namespace ilsr {

enum class Method { Auto, Horn, Tvpi, Ils1, Unit, Zlt1, Oracle };

inline std::optional<Method> method_from_name(const std::string& name) {
  if (name == "auto") return Method::Auto;
  if (name == "horn") return Method::Horn;
  if (name == "tvpi") return Method::Tvpi;
  if (name == "ils1") return Method::Ils1;
  if (name == "unit") return Method::Unit;
  if (name == "zlt1") return Method::Zlt1;
  if (name == "oracle") return Method::Oracle;
  return std::nullopt;
}

struct SolveOutcome {
  enum class Answer { yes, no, undecided } answer = Answer::undecided;
  std::optional<PathWitness> path;
  std::optional<CompressedPath> cpath;  // start at s
  std::string method_used;
  std::string note;
};

namespace detail_dispatch {

inline SolveOutcome run_oracle(const ILSInstance& inst, const Assignment& s,
                               const Assignment& t, std::uint64_t budget) {
  SolveOutcome out;
  out.method_used = "oracle";
  try {
    auto [yes, path] = bfs_reachable(inst, s, t, budget);
    out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
    if (path) out.path = std::move(path);
  } catch (const budget_error& e) {
    out.answer = SolveOutcome::Answer::undecided;
    out.note = e.what();
  }
  return out;
}

/// Horn with the whole-alphabet flip when the matrix is dual Horn instead.
inline SolveOutcome run_horn(const ILSInstance& inst, const Assignment& s,
                             const Assignment& t) {
  SolveOutcome out;
  out.method_used = "horn";
  if (is_horn(inst)) {
    auto [yes, w] = horn_reconfigure(inst, s, t);
    out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
    out.path = std::move(w);
    return out;
  }
  std::vector<bool> all(inst.vars(), true);
  ILSInstance mirrored = flip_columns(inst, all);
  if (!is_horn(mirrored))
    throw std::invalid_argument("instance is neither Horn nor dual Horn");
  out.note = "dual Horn instance handled through a full polarity flip";
  auto [yes, w] =
      horn_reconfigure(mirrored, flip_points(inst, all, s), flip_points(inst, all, t));
  out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
  if (w) {
    PathWitness mapped;
    for (auto& step : w->steps)
      mapped.steps.push_back(flip_points(mirrored, all, std::move(step)));
    out.path = std::move(mapped);
  }
  return out;
}

}  // namespace detail_dispatch

/// Regime dispatch: index < 1 goes to the always-yes construction, unit
/// instances at index one to the polynomial solver, general index one to the
/// decomposition, and index > 1 to the budgeted oracle. A failed partition
/// construction also falls back to the oracle.
inline SolveOutcome solve_dispatch(const ILSInstance& inst, const Assignment& s,
                                   const Assignment& t, Method method,
                                   std::uint64_t budget = kDefaultStateBudget) {
  check_dimensions(inst, s);
  check_dimensions(inst, t);
  if (!in_domain(inst, s) || !is_feasible(inst, s) || !in_domain(inst, t) ||
      !is_feasible(inst, t))
    throw std::invalid_argument("endpoints must be feasible");

  SolveOutcome out;
  switch (method) {
    case Method::Oracle:
      return detail_dispatch::run_oracle(inst, s, t, budget);
    case Method::Horn:
      return detail_dispatch::run_horn(inst, s, t);
    case Method::Tvpi: {
      out.method_used = "tvpi";
      auto [yes, w] = tvpi_reconfigure(inst, s, t);
      out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
      out.path = std::move(w);
      return out;
    }
    case Method::Ils1: {
      out.method_used = "ils1";
      auto [yes, w] = solve_ils1(inst, s, t);
      out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
      out.path = std::move(w);
      return out;
    }
    case Method::Unit: {
      out.method_used = "unit";
      auto [yes, w] = unit_ils1_solve(inst, s, t);
      out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
      out.cpath = std::move(w);
      return out;
    }
    case Method::Zlt1: {
      out.method_used = "zlt1";
      out.answer = SolveOutcome::Answer::yes;
      out.path = z_less_one_path(inst, s, t);
      return out;
    }
    case Method::Auto:
      break;
  }

  IndexSolution idx = compute_index(inst);
  RegimeClass regime = classify(idx);
  if (regime == RegimeClass::LessThanOne) {
    out.method_used = "zlt1";
    out.answer = SolveOutcome::Answer::yes;
    out.path = z_less_one_path(inst, s, t);
    return out;
  }
  if (regime == RegimeClass::ExactlyOne) {
    try {
      if (is_unit(inst)) {
        out.method_used = "unit";
        auto [yes, w] = unit_ils1_solve(inst, s, t);
        out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
        out.cpath = std::move(w);
      } else {
        out.method_used = "ils1";
        auto [yes, w] = solve_ils1(inst, s, t);
        out.answer = yes ? SolveOutcome::Answer::yes : SolveOutcome::Answer::no;
        out.path = std::move(w);
      }
      return out;
    } catch (const qh_error& e) {
      out = detail_dispatch::run_oracle(inst, s, t, budget);
      out.note = std::string("partition construction failed (") + e.what() +
                 "); answered by the oracle";
      return out;
    }
  }
  return detail_dispatch::run_oracle(inst, s, t, budget);
}

}  // namespace ilsr
