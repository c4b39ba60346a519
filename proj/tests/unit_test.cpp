#include <catch2/catch.hpp>

#include <random>
#include <sstream>

#include "ilsr/generators.hpp"
#include "ilsr/io.hpp"
#include "ilsr/oracle.hpp"
#include "ilsr/unit.hpp"
#include "test_support.hpp"

using namespace ilsr;
namespace ts = test_support;

TEST_CASE("unit recognition", "[unit]") {
  CHECK(is_unit(gen_chain(3, 5)));
  CHECK(is_unit(parse_instance("1 2 1\n0 0 >= 0\n")));
  CHECK_FALSE(is_unit(parse_instance("1 2 1\n2 1 >= 1\n")));
  CHECK_FALSE(is_unit(parse_instance("1 2 1\n1/2 0 >= 0\n")));
}

TEST_CASE("compressed paths expand, validate and round-trip", "[unit]") {
  CompressedPath cp;
  cp.moves.push_back({{0, 1}, {1, 1}, 2});
  cp.moves.push_back({{1}, {-1}, 1});
  CHECK(cp.expanded_length() == 5);

  PathWitness w = expand_compressed({0, 0}, cp);
  CHECK(w.length() == 5);
  CHECK(w.steps.back() == Assignment{2, 1});

  ILSInstance chain = gen_chain(2, 3);
  Assignment end = walk_compressed(chain, {0, 0}, cp);
  CHECK(end == Assignment{2, 1});
  CHECK(validate_path(chain, w));

  // equality chain rejects any single first step
  CompressedPath bad;
  bad.moves.push_back({{0}, {1}, 1});
  CHECK_THROWS(walk_compressed(gen_equality_chain(2), {0, 0}, bad));

  std::ostringstream out;
  write_compressed(cp, out);
  std::istringstream in(out.str());
  CompressedPath r = read_compressed(in);
  REQUIRE(r.moves.size() == 2);
  CHECK(r.moves[0].coords == cp.moves[0].coords);
  CHECK(r.moves[0].dirs == cp.moves[0].dirs);
  CHECK(r.moves[0].repeat == 2);
}

TEST_CASE("unit Horn minimum jumps whole plateaus at once", "[unit]") {
  // chain at d = 100 from the top corner: one round, both coordinates drop
  // together a hundred times
  ILSInstance chain = gen_chain(2, 100);
  auto [bottom, moves] = unit_horn_min(chain, {100, 100});
  CHECK(bottom == Assignment{0, 0});
  REQUIRE(moves.moves.size() == 1);
  CHECK(moves.moves[0].repeat == 100);
  CHECK(moves.moves[0].coords.size() == 2);
  CHECK(walk_compressed(chain, {100, 100}, moves) == bottom);

  // equality chain: stuck immediately
  ILSInstance eq = gen_equality_chain(5);
  auto [ebottom, emoves] = unit_horn_min(eq, {5, 5});
  CHECK(ebottom == Assignment{5, 5});
  CHECK(emoves.moves.empty());

  // already at the origin
  ILSInstance free2 = parse_instance("0 2 7\n");
  auto [zbottom, zmoves] = unit_horn_min(free2, {0, 0});
  CHECK(zbottom == Assignment{0, 0});
  CHECK(zmoves.moves.empty());

  CHECK_THROWS_AS(unit_horn_min(parse_instance("1 2 2\n2 -1 >= 0\n"), {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("unit Horn minimum agrees with the pseudo-polynomial descent", "[unit]") {
  ts::Rng rng(71);
  int used = 0;
  while (used < 50) {
    auto inst = ts::make_unit(ts::random_horn_instance(rng, 4, 5, 4));
    auto verts = ts::enumerate_feasible(inst);
    if (verts.empty()) continue;
    ++used;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)];
    auto [fast, moves] = unit_horn_min(inst, s);
    auto [slow, path] = descend_to_min(inst, s);
    CHECK(fast == slow);
    CHECK(moves.moves.size() <= static_cast<std::size_t>(inst.vars()));
    CHECK(walk_compressed(inst, s, moves) == fast);
    PathWitness expanded = expand_compressed(s, moves);
    if (expanded.steps.size() > 1) CHECK(validate_path(inst, expanded));
  }
}

TEST_CASE("unit TVPI ladder on the pinned instances", "[unit]") {
  // chain with a huge domain: one two-coordinate move repeated d times
  ILSInstance chain = gen_chain(2, 1000);
  auto [yes, ladder] = utvpi_reconfigure(chain, {0, 0}, {1000, 1000});
  REQUIRE(yes);
  REQUIRE(ladder.has_value());
  CHECK(ladder->expanded_length() == 2000);
  REQUIRE(ladder->moves.size() == 1);
  CHECK(ladder->moves[0].repeat == 1000);
  CHECK(walk_compressed(chain, {0, 0}, *ladder) == Assignment{1000, 1000});

  // equality chain at the same scale: the first rung is already unreachable
  CHECK_FALSE(utvpi_reconfigure(gen_equality_chain(1000), {0, 0}, {1000, 1000}).first);

  auto [self, selfpath] = utvpi_reconfigure(chain, {3, 3}, {3, 3});
  CHECK(self);
  CHECK(selfpath->moves.empty());
}

TEST_CASE("ladder rungs retire coordinates at their own thresholds", "[unit]") {
  // x1 - x2 >= -1 alone: independent coordinates, different travel lengths
  ILSInstance inst = parse_instance("1 2 9\n1 -1 >= -9\n");
  auto [yes, ladder] = utvpi_reconfigure(inst, {7, 2}, {1, 0});
  REQUIRE(yes);
  CHECK(walk_compressed(inst, {7, 2}, *ladder) == Assignment{1, 0});
  // first phase moves both coordinates, later phases only the long one
  REQUIRE(ladder->moves.size() == 2);
  CHECK(ladder->moves[0].coords.size() == 2);
  CHECK(ladder->moves[0].repeat == 2);
  CHECK(ladder->moves[1].coords.size() == 1);
  CHECK(ladder->moves[1].repeat == 4);
}

TEST_CASE("first-rung equivalence against the oracle", "[unit]") {
  ts::Rng rng(72);
  int used = 0;
  while (used < 40) {
    auto inst = ts::make_unit(ts::random_tvpi_instance(rng, 3, 4, 3));
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)], t = verts[pick(rng)];
    bool dominated = true;
    for (int j = 0; j < inst.vars(); ++j)
      if (s[j] < t[j]) dominated = false;
    if (!dominated || s == t) continue;
    ++used;

    Assignment u1(inst.vars());
    for (int j = 0; j < inst.vars(); ++j) u1[j] = std::max(s[j] - 1, t[j]);
    REQUIRE(is_feasible(inst, u1));
    bool full = bfs_reachable(inst, s, t).first;
    bool rung = bfs_reachable(inst, s, u1).first;
    CHECK(full == rung);

    auto [got, ladder] = utvpi_reconfigure(inst, s, t);
    CHECK(got == full);
    if (got) CHECK(walk_compressed(inst, s, *ladder) == t);
  }
}

TEST_CASE("unit TVPI decisions match the general solver and the oracle", "[unit]") {
  ts::Rng rng(73);
  int used = 0;
  while (used < 40) {
    auto inst = ts::make_unit(ts::random_tvpi_instance(rng, 3, 4, 3));
    auto verts = ts::enumerate_feasible(inst);
    if (verts.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    Assignment s = verts[pick(rng)], t = verts[pick(rng)];
    ++used;
    auto [fast, ladder] = utvpi_reconfigure(inst, s, t);
    CHECK(fast == tvpi_reconfigure(inst, s, t).first);
    CHECK(fast == bfs_reachable(inst, s, t).first);
    if (fast) CHECK(walk_compressed(inst, s, *ladder) == t);
  }
}

TEST_CASE("unit decomposition solver on mixed instances", "[unit]") {
  // chain rows on the pair (x1, x2), a Horn tie to x3
  ILSInstance mixed = parse_instance(
      "3 3 2\n"
      "1 -1 0 >= 0\n"
      "-1 1 0 >= -1\n"
      "1 0 -1 >= -1\n");
  REQUIRE(is_unit(mixed));
  REQUIRE(compute_index(mixed).z <= 1);
  {
    auto [yes, moves] = unit_ils1_solve(mixed, {0, 0, 0}, {2, 2, 2});
    bool oracle = bfs_reachable(mixed, {0, 0, 0}, {2, 2, 2}).first;
    CHECK(yes == oracle);
    if (yes) CHECK(walk_compressed(mixed, {0, 0, 0}, *moves) == Assignment{2, 2, 2});
  }

  // the equality chain as the TVPI block disconnects the levels
  ILSInstance blocked = parse_instance(
      "3 3 2\n"
      "1 -1 0 >= 0\n"
      "-1 1 0 >= 0\n"
      "0 0 -1 >= -2\n");
  auto [no, none] = unit_ils1_solve(blocked, {0, 0, 0}, {2, 2, 1});
  CHECK_FALSE(no);
  CHECK_FALSE(none.has_value());

  auto [self, selfmoves] = unit_ils1_solve(mixed, {1, 1, 1}, {1, 1, 1});
  CHECK(self);
  CHECK(selfmoves->moves.empty());
}

TEST_CASE("unit decomposition solver agrees with the oracle", "[unit]") {
  ts::Rng rng(74);
  int used = 0, yes_count = 0, no_count = 0;
  while (used < 40) {
    auto inst = ts::random_ils1_instance(rng, 4, 5, 3, /*unit_entries=*/true);
    REQUIRE(is_unit(inst));
    ts::BruteGraph g(inst);
    if (g.verts.empty()) continue;
    ++used;
    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    std::vector<std::pair<Assignment, Assignment>> pairs;
    pairs.emplace_back(g.verts[pick(rng)], g.verts[pick(rng)]);
    if (g.comp_count > 1) {
      std::size_t a = pick(rng);
      for (std::size_t b = 0; b < g.verts.size(); ++b)
        if (g.comp[b] != g.comp[a]) {
          pairs.emplace_back(g.verts[a], g.verts[b]);
          break;
        }
    }
    for (const auto& [s, t] : pairs) {
      auto [got, moves] = unit_ils1_solve(inst, s, t);
      bool expected = g.reachable(s, t);
      CHECK(got == expected);
      if (expected) {
        ++yes_count;
        CHECK(walk_compressed(inst, s, *moves) == t);
      } else {
        ++no_count;
      }
    }
  }
  CHECK(yes_count >= 5);
  CHECK(no_count >= 5);
}

TEST_CASE("huge-domain unit chain decides instantly", "[unit]") {
  ILSInstance chain = gen_chain(2, 1000000);
  Assignment s{0, 0}, t{1000000, 1000000};
  auto [yes, moves] = unit_ils1_solve(chain, s, t);
  CHECK(yes);
  CHECK(moves->expanded_length() == 2000000);
}
