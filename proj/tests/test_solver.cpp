#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "synccensus/families.hpp"
#include "synccensus/solver.hpp"

using namespace synccensus;

namespace {

TransitionTable cerny(int n) { return build_family({Family::kCernyS, n, 1}); }

}  // namespace

TEST_CASE("is_synchronizing examples") {
  CHECK(is_synchronizing(TransitionTable::from_rows({{0, 0}})));
  // Two permutations never shrink Q.
  CHECK_FALSE(is_synchronizing(TransitionTable::from_rows({{1, 0}, {2, 2}, {0, 1}})));
  CHECK(is_synchronizing(cerny(9)));
}

TEST_CASE("shortest_reset_length examples") {
  SUBCASE("n = 1 has length 0 with the empty word") {
    const auto r = shortest_reset_length(TransitionTable::from_rows({{0, 0}}), true);
    REQUIRE(r.synchronizing());
    CHECK(*r.length == 0);
    CHECK(r.witness->empty());
  }
  SUBCASE("Cerny C_4 needs 9 letters") {
    const auto r = shortest_reset_length(cerny(4), true);
    REQUIRE(r.synchronizing());
    CHECK(*r.length == 9);
    CHECK(r.witness->size() == 9);
    CHECK(apply_word(cerny(4), StateSet::full(4), *r.witness).is_singleton());
  }
  SUBCASE("Cerny C_11 needs 100 letters") {
    CHECK(shortest_reset_length(cerny(11)).length == 100);
  }
  SUBCASE("a constant letter resets in one step") {
    const auto t = TransitionTable::from_rows({{2, 1}, {2, 0}, {2, 2}});
    const auto r = shortest_reset_length(t, true);
    CHECK(r.length == 1);
    CHECK(word_to_string(*r.witness) == "a");
  }
  SUBCASE("permutation letters report not synchronizing") {
    const auto r = shortest_reset_length(TransitionTable::from_rows({{1, 1}, {0, 0}}), true);
    CHECK_FALSE(r.synchronizing());
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("power-set BFS agrees with a list-based BFS on all n <= 3 tables") {
  ResetSolver solver;
  for (int n = 1; n <= 3; ++n) {
    oracle::for_each_labeled(n, 2, [&](const oracle::Flat& e) {
      REQUIRE(solver.solve(oracle::table(n, 2, e)).length ==
              oracle::naive_reset_length(n, 2, e));
    });
  }
}

TEST_CASE("pair criterion matches BFS on every table with n <= 4") {
  ResetSolver solver;
  for (int n = 1; n <= 4; ++n) {
    oracle::for_each_labeled(n, 2, [&](const oracle::Flat& e) {
      const auto t = oracle::table(n, 2, e);
      REQUIRE(is_synchronizing(t) == solver.solve(t).synchronizing());
    });
  }
}

TEST_CASE("pair criterion matches BFS on 10^6 random tables with n <= 11") {
  std::mt19937_64 rng(99);
  ResetSolver solver;
  int disagreements = 0;
  int synchronizing = 0;
  for (int trial = 0; trial < 1000000; ++trial) {
    const int n = 2 + trial % 10;
    const auto t = oracle::table(n, 2, oracle::random_table(rng, n, 2));
    const bool pair = is_synchronizing(t);
    synchronizing += pair ? 1 : 0;
    if (pair != solver.solve(t).synchronizing()) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(synchronizing > 0);
}

TEST_CASE("witness words are resets of the reported length") {
  std::mt19937_64 rng(1234);
  ResetSolver solver;
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto e = oracle::random_table(rng, n, k);
    const auto t = oracle::table(n, k, e);
    const auto r = solver.solve(t, true);
    if (!r.synchronizing()) continue;
    REQUIRE(r.witness->size() == static_cast<std::size_t>(*r.length));
    REQUIRE(apply_word(t, StateSet::full(n), *r.witness).is_singleton());
    if (n <= 6) {
      REQUIRE(r.length == oracle::naive_reset_length(n, k, e));
    }
  }
}

TEST_CASE("reset length is invariant under relabeling") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const auto e = oracle::random_table(rng, n, 2);
    const auto base = shortest_reset_length(oracle::table(n, 2, e)).length;
    for (int r = 0; r < 10; ++r) {
      const auto image = oracle::relabel(n, 2, e, oracle::random_perm(rng, n),
                                         oracle::random_perm(rng, 2));
      REQUIRE(shortest_reset_length(oracle::table(n, 2, image)).length == base);
    }
  }
}

TEST_CASE("adding a letter never lengthens the shortest reset word") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const auto t = oracle::table(n, 3, oracle::random_table(rng, n, 3));
    const auto full = shortest_reset_length(t).length;
    for (Letter a = 0; a < 3; ++a) {
      const auto reduced = shortest_reset_length(remove_letter(t, a)).length;
      if (reduced) {
        REQUIRE(full.has_value());
        REQUIRE(*full <= *reduced);
      }
    }
  }
}

TEST_CASE("is_irreducible") {
  // Constant letter a: removing b leaves a synchronizing unary automaton.
  CHECK_FALSE(is_irreducible(TransitionTable::from_rows({{0, 1}, {0, 2}, {0, 0}})));
  CHECK(is_irreducible(cerny(4)));
  CHECK_FALSE(is_irreducible(TransitionTable::from_rows({{0, 0}})));
  CHECK_FALSE(is_irreducible(TransitionTable::from_rows({{1, 1}, {0, 0}})));

  // Direct reduct check on C_4: a is a permutation, b alone keeps 3 states.
  const auto c4 = cerny(4);
  CHECK_FALSE(is_synchronizing(remove_letter(c4, 0)));
  CHECK_FALSE(is_synchronizing(remove_letter(c4, 1)));
}
