#include <catch2/catch.hpp>

#include <random>

#include "ilsr/elimination.hpp"
#include "ilsr/generators.hpp"
#include "ilsr/io.hpp"
#include "test_support.hpp"

using namespace ilsr;
namespace ts = test_support;

TEST_CASE("elimination orderings on the pinned matrices", "[elimination]") {
  // all-positive rows: only the negative-side condition fires, so every
  // column is flipped later
  ILSInstance pos = parse_instance("2 2 1\n1 2 >= 1\n3 1 >= 1\n");
  auto ord = elimination_ordering(pos);
  REQUIRE(ord.has_value());
  CHECK(ord->order == std::vector<int>{0, 1});
  CHECK(ord->kind == std::vector<int>{2, 2});

  // the equality chain is stuck immediately
  CHECK_FALSE(elimination_ordering(gen_equality_chain(2)).has_value());

  // all rows nonpositive: condition (ii) holds outright, column by column
  ILSInstance cube = gen_hypercube(3);
  auto cord = elimination_ordering(cube);
  REQUIRE(cord.has_value());
  CHECK(cord->kind == std::vector<int>{2, 2, 2});

  ILSInstance single = parse_instance("1 1 3\n1 >= 1\n");
  auto sord = elimination_ordering(single);
  REQUIRE(sord.has_value());
  CHECK(sord->order == std::vector<int>{0});

  // index one, so no ordering
  CHECK_FALSE(elimination_ordering(gen_chain(3, 2)).has_value());
}

TEST_CASE("replaying an ordering empties the matrix", "[elimination]") {
  ts::Rng rng(61);
  int found = 0;
  for (int iter = 0; iter < 60; ++iter) {
    auto inst = ts::random_instance(rng, 3, 3, 2, 0.5);
    auto ord = elimination_ordering(inst);
    Rational z = compute_index(inst).z;
    if (z < 1) CHECK(ord.has_value());
    if (!ord) continue;
    ++found;
    std::vector<bool> remaining(inst.vars(), true);
    for (std::size_t k = 0; k < ord->order.size(); ++k) {
      int j = ord->order[k];
      REQUIRE(remaining[j]);
      for (int i = 0; i < inst.rows(); ++i) {
        bool triggers = ord->kind[k] == 1 ? inst.coef[i][j] > 0 : inst.coef[i][j] < 0;
        if (!triggers) continue;
        for (int l = 0; l < inst.vars(); ++l)
          if (l != j && remaining[l]) CHECK(inst.coef[i][l].is_zero());
      }
      remaining[j] = false;
    }
  }
  CHECK(found >= 10);
}

TEST_CASE("normalization reaches property (P1)", "[elimination]") {
  // all-positive matrix: everything flips, all entries become negative
  ILSInstance pos = parse_instance("2 2 3\n1 2 >= 1\n3 1 >= 1\n");
  P1Normalization n1 = normalize_p1(pos);
  CHECK(n1.flipped == std::vector<bool>{true, true});
  for (const auto& row : n1.instance.coef)
    for (const auto& a : row) CHECK(a < 0);
  CHECK_FALSE(p1_violation(n1.instance).has_value());

  // hypercube: every column flips, rows become x_j >= 0
  ILSInstance cube = gen_hypercube(2);
  P1Normalization n2 = normalize_p1(cube);
  CHECK(n2.flipped == std::vector<bool>{true, true});
  for (int i = 0; i < n2.instance.rows(); ++i) CHECK(n2.instance.rhs[i] == 0);
  CHECK_FALSE(p1_violation(n2.instance).has_value());

  CHECK_THROWS_AS(normalize_p1(gen_equality_chain(2)), std::invalid_argument);

  ts::Rng rng(62);
  for (int iter = 0; iter < 40; ++iter) {
    auto inst = ts::random_instance(rng, 3, 3, 2, 0.5);
    if (!elimination_ordering(inst)) continue;
    P1Normalization norm = normalize_p1(inst);
    CHECK_FALSE(p1_violation(norm.instance).has_value());
    CHECK(is_horn(norm.instance));
    // the coordinate maps invert each other
    std::uniform_int_distribution<std::int64_t> val(0, inst.domain_bound);
    Assignment x(inst.vars());
    for (auto& v : x) v = val(rng);
    CHECK(from_normalized(norm, inst, to_normalized(norm, inst, x)) == x);
    CHECK(is_feasible(inst, x) == is_feasible(norm.instance, to_normalized(norm, inst, x)));
  }
}

TEST_CASE("always-yes paths below index one", "[elimination]") {
  // hypercube: witness through the global minimum, length <= 2n
  ILSInstance cube = gen_hypercube(3);
  PathWitness w = z_less_one_path(cube, {1, 0, 1}, {0, 1, 0});
  CHECK(validate_path(cube, w));
  CHECK(w.steps.front() == Assignment{1, 0, 1});
  CHECK(w.steps.back() == Assignment{0, 1, 0});
  CHECK(w.length() <= 6);

  // one variable, -x >= -d: a single jump connects the extremes
  ILSInstance line = parse_instance("1 1 5\n-1 >= -5\n");
  PathWitness lw = z_less_one_path(line, {0}, {5});
  CHECK(validate_path(line, lw));
  CHECK(lw.length() == 1);

  PathWitness self = z_less_one_path(cube, {1, 1, 1}, {1, 1, 1});
  CHECK(self.length() == 0);

  CHECK_THROWS_AS(z_less_one_path(gen_equality_chain(2), {0, 0}, {1, 1}),
                  std::invalid_argument);
}

TEST_CASE("low-index instances are connected and short-diameter", "[elimination]") {
  ts::Rng rng(63);
  int used = 0;
  while (used < 25) {
    auto inst = ts::random_instance(rng, 3, 3, 2, 0.5);
    if (compute_index(inst).z >= 1) continue;
    ts::BruteGraph g(inst);
    if (g.verts.empty()) continue;
    ++used;
    CHECK(g.comp_count <= 1);
    auto pair = ts::random_feasible_pair(rng, g.verts);
    auto [s, t] = *pair;
    PathWitness w = z_less_one_path(inst, s, t);
    CHECK(validate_path(inst, w));
    CHECK(w.steps.front() == s);
    CHECK(w.steps.back() == t);
    CHECK(w.length() <= static_cast<std::size_t>(2 * inst.vars()));
  }
}
