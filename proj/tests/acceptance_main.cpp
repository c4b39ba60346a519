// Acceptance suite: runs the project's ten gate criteria and prints one
// PASS/FAIL line each. Exit code is the number of failed criteria.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ilsr/certificate.hpp"
#include "ilsr/dispatch.hpp"
#include "ilsr/generators.hpp"
#include "ilsr/index_lp.hpp"
#include "ilsr/io.hpp"
#include "ilsr/oracle.hpp"
#include "test_support.hpp"

using namespace ilsr;
namespace ts = test_support;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ILSInstance affine_gadget() {
  return parse_instance(
      "4 3 1\n"
      "1 1 1 >= 1\n"
      "1 -1 -1 >= -1\n"
      "-1 1 -1 >= -1\n"
      "-1 -1 1 >= -1\n");
}

bool criterion_index_exactness(std::string& detail) {
  bool ok = true;
  auto timed = [&](const ILSInstance& inst, const Rational& expected) {
    auto start = Clock::now();
    Rational z = compute_index(inst).z;
    double secs = seconds_since(start);
    if (z != expected || secs >= 1.0) ok = false;
    return z;
  };
  Rational a = timed(affine_gadget(), Rational(3, 2));
  Rational b = timed(gen_equality_chain(2), Rational(1));
  Rational c = timed(parse_instance("1 3 2\n2 1 1/2 >= 3\n"), Rational(0));
  std::ostringstream os;
  os << "z = " << a.str() << ", " << b.str() << ", " << c.str()
     << " (expected 3/2, 1, 0)";
  detail = os.str();
  return ok;
}

bool criterion_dispatch_vs_oracle(std::string& detail) {
  auto start = Clock::now();
  ts::Rng rng(1001);
  int used = 0, less = 0, one = 0, more = 0, mismatches = 0;
  std::uniform_int_distribution<int> pick_n(2, 4), pick_m(1, 6), pick_d(1, 3);
  std::uniform_int_distribution<int> flavor(0, 3);
  auto random_cnf_rows = [&](int n, int m) {
    // 3-nonzero +-1 rows over d = 1 lean toward the hard regime
    std::uniform_int_distribution<int> col(0, n - 1), sign(0, 1);
    CnfFormula phi;
    phi.num_vars = n;
    for (int i = 0; i < m; ++i) {
      std::set<int> vars;
      while (static_cast<int>(vars.size()) < 3) vars.insert(col(rng) + 1);
      std::vector<int> clause;
      for (int v : vars) clause.push_back(sign(rng) ? v : -v);
      phi.clauses.push_back(std::move(clause));
    }
    return sat_to_ils(phi);
  };
  while (used < 500) {
    int n = pick_n(rng), m = pick_m(rng);
    std::int64_t d = pick_d(rng);
    ILSInstance inst = [&] {
      switch (flavor(rng)) {
        case 0: return ts::random_instance(rng, n, m, d);
        case 1: return ts::random_horn_instance(rng, n, m, d);
        case 2: return ts::random_tvpi_instance(rng, n, m, d);
        default: return random_cnf_rows(std::max(n, 3), std::max(m, 3));
      }
    }();
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 2) continue;
    ++used;
    RegimeClass regime = classify(compute_index(inst));
    if (regime == RegimeClass::LessThanOne) ++less;
    else if (regime == RegimeClass::ExactlyOne) ++one;
    else ++more;

    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)], t = verts[pick(rng)];
    auto a = solve_dispatch(inst, s, t, Method::Auto);
    auto o = solve_dispatch(inst, s, t, Method::Oracle);
    if (a.answer != o.answer) ++mismatches;
  }
  double secs = seconds_since(start);
  std::ostringstream os;
  os << used << " instances (z<1: " << less << ", z=1: " << one << ", z>1: " << more
     << "), mismatches: " << mismatches << ", " << secs << "s";
  detail = os.str();
  return mismatches == 0 && used >= 500 && less > 0 && one > 0 && more > 0 &&
         secs < 60.0;
}

bool criterion_closures(std::string& detail) {
  ts::Rng rng(1002);
  int horn_checked = 0, tvpi_checked = 0, violations = 0;
  while (horn_checked < 200) {
    auto inst = ts::random_horn_instance(rng, 4, 5, 2);
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 2) continue;
    ++horn_checked;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    for (int trial = 0; trial < 5; ++trial) {
      const auto& x = verts[pick(rng)];
      const auto& y = verts[pick(rng)];
      Assignment m(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) m[j] = std::min(x[j], y[j]);
      if (!is_feasible(inst, m)) ++violations;
    }
  }
  while (tvpi_checked < 200) {
    auto inst = ts::random_tvpi_instance(rng, 4, 5, 2);
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 3) continue;
    ++tvpi_checked;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    for (int trial = 0; trial < 5; ++trial) {
      const auto& x = verts[pick(rng)];
      const auto& y = verts[pick(rng)];
      const auto& z = verts[pick(rng)];
      Assignment m(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) m[j] = median(x[j], y[j], z[j]);
      if (!is_feasible(inst, m)) ++violations;
    }
  }
  std::ostringstream os;
  os << horn_checked << " Horn + " << tvpi_checked << " TVPI instances, "
     << violations << " closure violations";
  detail = os.str();
  return violations == 0;
}

bool criterion_monotone_paths(std::string& detail) {
  ts::Rng rng(1003);
  int horn_runs = 0, tvpi_runs = 0, failures = 0;
  while (horn_runs < 60) {
    auto inst = ts::random_horn_instance(rng, 3, 4, 3);
    ts::BruteGraph g(inst);
    if (g.verts.empty()) continue;
    ++horn_runs;
    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    Assignment s = g.verts[pick(rng)];
    auto [bottom, path] = descend_to_min(inst, s);
    Assignment expected = ts::coordinatewise_min(g.component_of(s));
    if (bottom != expected || !validate_path(inst, path)) ++failures;
    for (std::size_t k = 1; k < path.steps.size(); ++k)
      for (int j = 0; j < inst.vars(); ++j)
        if (path.steps[k][j] > path.steps[k - 1][j]) ++failures;
  }
  while (tvpi_runs < 60) {
    auto inst = ts::random_tvpi_instance(rng, 3, 4, 3);
    ts::BruteGraph g(inst);
    if (g.verts.size() < 2) continue;
    ++tvpi_runs;
    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    Assignment s = g.verts[pick(rng)], t = g.verts[pick(rng)];
    auto [bottom, path] = t_descend(inst, s, t);
    Assignment expected = ts::anchored_min(g.component_of(s), t);
    if (bottom != expected || !validate_path(inst, path)) ++failures;
    for (std::size_t k = 1; k < path.steps.size(); ++k)
      for (int j = 0; j < inst.vars(); ++j)
        if (!leq_anchored(t[j], path.steps[k][j], path.steps[k - 1][j])) ++failures;
  }
  std::ostringstream os;
  os << horn_runs << " Horn + " << tvpi_runs
     << " TVPI descents against exhaustive minima, " << failures << " failures";
  detail = os.str();
  return failures == 0;
}

bool criterion_diameter_index_one(std::string& detail) {
  int failures = 0;
  for (int n = 2; n <= 3; ++n)
    for (std::int64_t d = 1; d <= 3; ++d) {
      ILSInstance chain = gen_chain(n, d);
      Assignment zero(n, 0), top(n, d);
      auto [yes, wit] = bfs_reachable(chain, zero, top);
      if (!yes || static_cast<std::int64_t>(wit->length()) != d * n) ++failures;
      auto [ok, solved] = solve_ils1(chain, zero, top);
      if (!ok || !validate_path(chain, *solved) ||
          static_cast<std::int64_t>(solved->length()) > 4 * d * n)
        ++failures;
    }
  // witness bound on random index-one instances
  ts::Rng rng(1005);
  int emitted = 0;
  while (emitted < 40) {
    auto inst = ts::random_ils1_instance(rng, 4, 5, 2);
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)], t = verts[pick(rng)];
    auto [yes, wit] = solve_ils1(inst, s, t);
    if (!yes) continue;
    ++emitted;
    if (!validate_path(inst, *wit) ||
        static_cast<std::int64_t>(wit->length()) > 4 * inst.domain_bound * inst.vars())
      ++failures;
  }
  std::ostringstream os;
  os << "chain distances d*n for (n,d) in {2,3}x{1,2,3}; " << emitted
     << " random witnesses within 4*d*n; " << failures << " failures";
  detail = os.str();
  return failures == 0;
}

bool criterion_diameter_low_index(std::string& detail) {
  ts::Rng rng(1006);
  int used = 0, failures = 0;
  while (used < 60) {
    auto inst = ts::random_instance(rng, 3, 3, 2, 0.5);
    if (compute_index(inst).z >= 1) continue;
    ts::BruteGraph g(inst);
    if (g.verts.empty()) continue;
    ++used;
    if (g.comp_count != 1) ++failures;
    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    Assignment s = g.verts[pick(rng)], t = g.verts[pick(rng)];
    PathWitness w = z_less_one_path(inst, s, t);
    if (!validate_path(inst, w) || w.steps.front() != s || w.steps.back() != t ||
        w.length() > static_cast<std::size_t>(2 * inst.vars()))
      ++failures;
  }
  std::ostringstream os;
  os << used << " generated z<1 instances: single component, witnesses <= 2n; "
     << failures << " failures";
  detail = os.str();
  return failures == 0;
}

bool criterion_exponential_family(std::string& detail) {
  bool ok = true;
  GraphStats st2 = graph_stats(gen_diameter_family(2, 2).instance);
  if (st2.component_count() != 1 || !st2.components[0].is_path ||
      st2.components[0].size != 5)
    ok = false;

  DiameterFamily f4 = gen_diameter_family(4, 2);
  auto [yes, wit] = bfs_reachable(f4.instance, f4.s, f4.t);
  if (!yes || wit->length() != 16) ok = false;
  GraphStats st4 = graph_stats(f4.instance);
  bool path4 = false;
  for (const auto& c : st4.components)
    if (c.representative == f4.s) path4 = c.is_path && c.size == 17;
  if (!path4) ok = false;

  std::ostringstream os;
  os << "n=2: path with 4 edges; n=4: path component, BFS length "
     << (yes ? std::to_string(wit->length()) : std::string("-"))
     << " = recurrence 3*4+4 = 16. Note: the published closed form "
        "2(d+2)*3^(n/2-1)-2 gives 22 at (4,2) and disagrees with the "
        "recurrence it is derived from; the BFS value is authoritative here";
  detail = os.str();
  return ok;
}

bool criterion_gadget_tables(std::string& detail) {
  int failures = 0;
  // extension tables for t in {1,2}
  for (std::int64_t t : {std::int64_t(1), std::int64_t(2)}) {
    CnfFormula one;
    one.num_vars = 3;
    one.clauses = {{1, 2, 3}};
    GadgetParams params{Rational(1) + Rational(1, t), Rational(1, t), t};
    CnfFormula psi = expand_sat_gadget(one, params);
    auto satisfies = [&](const std::vector<int>& x) {
      for (const auto& c : psi.clauses) {
        bool sat = false;
        for (int lit : c) {
          int v = x[std::abs(lit) - 1];
          if ((lit > 0 && v == 1) || (lit < 0 && v == 0)) { sat = true; break; }
        }
        if (!sat) return false;
      }
      return true;
    };
    int aux = static_cast<int>(2 * (1 + t));
    for (int lits = 0; lits < 8; ++lits) {
      int l1 = lits & 1, l2 = (lits >> 1) & 1, l3 = (lits >> 2) & 1;
      std::set<std::vector<int>> actual;
      for (int mask = 0; mask < (1 << aux); ++mask) {
        std::vector<int> x{l1, l2, l3};
        for (int k = 0; k < aux; ++k) x.push_back((mask >> k) & 1);
        if (satisfies(x)) actual.insert({x.begin() + 3, x.end()});
      }
      // expected rows: constants and nonincreasing chains per block
      auto is_chain = [&](const std::vector<int>& v, int off) {
        for (int k = 0; k < t; ++k)
          if (v[off + k] < v[off + k + 1]) return false;
        return true;
      };
      auto is_const = [&](const std::vector<int>& v, int off, int val) {
        for (int k = 0; k <= t; ++k)
          if (v[off + k] != val) return false;
        return true;
      };
      std::set<std::vector<int>> expected;
      for (int mask = 0; mask < (1 << aux); ++mask) {
        std::vector<int> yz(aux);
        for (int k = 0; k < aux; ++k) yz[k] = (mask >> k) & 1;
        bool in = false;
        int zoff = static_cast<int>(t) + 1;
        if (l1 == 0 && l2 == 0 && l3 == 0) in = false;
        else if (l1 == 0 && l2 == 0 && l3 == 1)
          in = is_const(yz, 0, 0) && is_const(yz, zoff, 1);
        else if (l1 == 0 && l2 == 1 && l3 == 0)
          in = is_const(yz, 0, 0) && is_const(yz, zoff, 0);
        else if (l1 == 1 && l2 == 0 && l3 == 0)
          in = is_const(yz, 0, 1) && is_const(yz, zoff, 0);
        else if (l1 == 0 && l2 == 1 && l3 == 1)
          in = is_const(yz, 0, 0) && is_chain(yz, zoff);
        else if (l1 == 1 && l2 == 0 && l3 == 1)
          in = (is_const(yz, 0, 1) && is_chain(yz, zoff)) ||
               (is_chain(yz, 0) && is_const(yz, zoff, 1));
        else if (l1 == 1 && l2 == 1 && l3 == 0)
          in = is_chain(yz, 0) && is_const(yz, zoff, 0);
        else
          in = is_chain(yz, 0) && is_chain(yz, zoff);
        if (in) expected.insert(std::move(yz));
      }
      if (actual != expected) ++failures;
      if (l1 == 0 && l2 == 0 && l3 == 0 && !actual.empty()) ++failures;
    }
  }
  // exact index bound for the expanded affine seed
  CnfFormula affine;
  affine.num_vars = 3;
  affine.clauses = {{1, 2, 3}, {1, -2, -3}, {-1, 2, -3}, {-1, -2, 3}};
  for (const Rational& gamma : {Rational(3, 2), Rational(2)}) {
    GadgetParams params = GadgetParams::from_gamma(gamma);
    Rational z = compute_index(sat_to_ils(expand_sat_gadget(affine, params))).z;
    if (!(z <= gamma)) ++failures;
  }
  std::ostringstream os;
  os << "extension tables reproduced at t in {1,2} (empty set at (0,0,0)); "
        "expanded index <= gamma for gamma in {3/2, 2}; "
     << failures << " failures";
  detail = os.str();
  return failures == 0;
}

bool criterion_certificates(std::string& detail) {
  ts::Rng rng(1009);
  int used = 0, found = 0, absent = 0, failures = 0;
  std::vector<std::tuple<ILSInstance, Assignment, Assignment>> cases;
  cases.emplace_back(gen_equality_chain(2), Assignment{0, 0}, Assignment{2, 2});
  cases.emplace_back(gen_equality_chain(2), Assignment{0, 0}, Assignment{1, 1});
  cases.emplace_back(gen_equality_chain(3), Assignment{1, 1}, Assignment{3, 3});
  {
    // equality block plus a free Horn coordinate
    ILSInstance tied = parse_instance("3 3 2\n1 -1 0 >= 0\n-1 1 0 >= 0\n0 0 -1 >= -2\n");
    cases.emplace_back(tied, Assignment{0, 0, 0}, Assignment{1, 1, 2});
    // two independent equality blocks
    ILSInstance twin = parse_instance(
        "4 4 2\n1 -1 0 0 >= 0\n-1 1 0 0 >= 0\n0 0 1 -1 >= 0\n0 0 -1 1 >= 0\n");
    cases.emplace_back(twin, Assignment{0, 0, 0, 0}, Assignment{1, 1, 0, 0});
    cases.emplace_back(twin, Assignment{2, 2, 1, 1}, Assignment{2, 2, 2, 2});
  }
  std::uniform_int_distribution<int> pick_n(3, 4);
  while (used < 80) {
    int n = pick_n(rng);
    auto inst = ts::random_ils1_instance(rng, n, 4, 2);
    ts::BruteGraph g(inst);
    if (g.verts.empty()) continue;
    ++used;
    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    cases.emplace_back(inst, g.verts[pick(rng)], g.verts[pick(rng)]);
    if (g.comp_count > 1) {
      std::size_t a = pick(rng);
      for (std::size_t b = 0; b < g.verts.size(); ++b)
        if (g.comp[b] != g.comp[a]) {
          cases.emplace_back(inst, g.verts[a], g.verts[b]);
          break;
        }
    }
  }
  for (const auto& [inst, s, t] : cases) {
    ts::BruteGraph g(inst);
    bool connected = g.reachable(s, t);
    auto cert = search_certificate_fixed_n(inst, s, t);
    if (cert.has_value() == connected) ++failures;
    if (cert) {
      ++found;
      if (!(check_certificate(inst, *cert, s) || check_certificate(inst, *cert, t)))
        ++failures;
    } else {
      ++absent;
    }
  }
  std::ostringstream os;
  os << cases.size() << " searches (" << found << " certificates, " << absent
     << " connected), " << failures << " soundness/completeness failures";
  detail = os.str();
  return failures == 0 && found >= 5 && absent >= 5;
}

bool criterion_unit_fast_paths(std::string& detail) {
  ts::Rng rng(1010);
  int horn_runs = 0, ladder_runs = 0, failures = 0;
  while (horn_runs < 200) {
    auto inst = ts::make_unit(ts::random_horn_instance(rng, 4, 5, 4));
    auto verts = ts::enumerate_feasible(inst);
    if (verts.empty()) continue;
    ++horn_runs;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)];
    auto [fast, moves] = unit_horn_min(inst, s);
    auto [slow, path] = descend_to_min(inst, s);
    if (fast != slow) ++failures;
    if (moves.moves.size() > static_cast<std::size_t>(inst.vars())) ++failures;
  }
  while (ladder_runs < 200) {
    auto inst = ts::make_unit(ts::random_tvpi_instance(rng, 3, 4, 3));
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)], t = verts[pick(rng)];
    bool dominated = true;
    for (int j = 0; j < inst.vars(); ++j)
      if (s[j] < t[j]) dominated = false;
    if (!dominated || s == t) continue;
    ++ladder_runs;
    Assignment u1(inst.vars());
    for (int j = 0; j < inst.vars(); ++j) u1[j] = std::max(s[j] - 1, t[j]);
    bool full = bfs_reachable(inst, s, t).first;
    if (full != bfs_reachable(inst, s, u1).first) ++failures;  // rung equivalence
    auto [fast, ladder] = utvpi_reconfigure(inst, s, t);
    if (fast != full) ++failures;
    if (fast && walk_compressed(inst, s, *ladder) != t) ++failures;
  }
  auto start = Clock::now();
  ILSInstance chain = gen_chain(2, 1000000);
  auto [yes, moves] = unit_ils1_solve(chain, {0, 0}, {1000000, 1000000});
  double secs = seconds_since(start);
  if (!yes || moves->expanded_length() != 2000000 || secs >= 1.0) ++failures;
  std::ostringstream os;
  os << horn_runs << " unit Horn minima (round count <= n+1), " << ladder_runs
     << " ladder equivalences, d=10^6 chain in " << secs << "s; " << failures
     << " failures";
  detail = os.str();
  return failures == 0;
}

struct Criterion {
  int id;
  const char* label;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "index exactness on the pinned instances", criterion_index_exactness},
      {2, "auto dispatch matches the oracle across regimes", criterion_dispatch_vs_oracle},
      {3, "Horn min / TVPI median closure", criterion_closures},
      {4, "monotone descents reach the exhaustive minima", criterion_monotone_paths},
      {5, "index-one diameter d*n and witness bound 4*d*n", criterion_diameter_index_one},
      {6, "low-index connectivity and witness bound 2n", criterion_diameter_low_index},
      {7, "exponential-diameter family path lengths", criterion_exponential_family},
      {8, "clause-gadget solution tables and index bounds", criterion_gadget_tables},
      {9, "certificate soundness and completeness", criterion_certificates},
      {10, "unit fast paths and polynomial behavior", criterion_unit_fast_paths},
  };
  int failed = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.label
              << " -- " << detail << '\n';
  }
  std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << " ("
            << criteria.size() - failed << "/" << criteria.size() << ")\n";
  return failed;
}
