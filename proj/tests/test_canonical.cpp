#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "synccensus/canonical.hpp"
#include "synccensus/families.hpp"

using namespace synccensus;

namespace {

oracle::Flat key_flat(const CanonicalKey& key) {
  return oracle::Flat(key.entries.begin(), key.entries.end());
}

}  // namespace

TEST_CASE("canonical key agrees with brute-force minimization") {
  SUBCASE("all labeled tables with n <= 3, k = 2") {
    for (int n = 1; n <= 3; ++n) {
      oracle::for_each_labeled(n, 2, [&](const oracle::Flat& e) {
        const auto t = oracle::table(n, 2, e);
        const auto expected = oracle::brute_canonical(n, 2, e);
        REQUIRE(key_flat(canonical_key(t)) == expected);
        REQUIRE(is_self_canonical(t) == (e == expected));
      });
    }
  }
  SUBCASE("random tables up to n = 5 with up to 3 letters") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 5);
      const int k = 1 + static_cast<int>(rng() % 3);
      const auto e = oracle::random_table(rng, n, k);
      const auto expected = oracle::brute_canonical(n, k, e);
      REQUIRE(key_flat(canonical_key(oracle::table(n, k, e))) == expected);
      REQUIRE(is_self_canonical(oracle::table(n, k, expected)));
    }
  }
}

TEST_CASE("729 labeled tables with n = 3 fall into 74 classes") {
  std::set<oracle::Flat> keys;
  oracle::for_each_labeled(3, 2, [&](const oracle::Flat& e) {
    keys.insert(key_flat(canonical_key(oracle::table(3, 2, e))));
  });
  CHECK(keys.size() == 74);
}

TEST_CASE("canonical key is a fixed point and orbit invariant") {
  std::mt19937_64 rng(11);
  for (int sample = 0; sample < 40; ++sample) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int k = 1 + static_cast<int>(rng() % 2) + (sample % 5 == 0 ? 1 : 0);
    const auto e = oracle::random_table(rng, n, k);
    const auto t = oracle::table(n, k, e);
    const auto key = canonical_key(t);

    const auto form = canonical_form(t);
    CHECK(is_self_canonical(form));
    CHECK(canonical_key(form) == key);

    for (int r = 0; r < 100; ++r) {
      const auto pi = oracle::random_perm(rng, n);
      const auto sigma = oracle::random_perm(rng, k);
      const auto image = oracle::table(n, k, oracle::relabel(n, k, e, pi, sigma));
      REQUIRE(canonical_key(image) == key);
    }
  }
}

TEST_CASE("canonical key handles highly symmetric and disconnected tables") {
  // Both letters identity: every state is its own component.
  std::vector<int> id;
  for (int q = 0; q < 7; ++q) {
    id.push_back(q);
    id.push_back(q);
  }
  const auto t = oracle::table(7, 2, id);
  CHECK(key_flat(canonical_key(t)) == id);
  CHECK(is_self_canonical(t));
  CHECK(automorphism_order(t) == 5040 * 2);
}

TEST_CASE("automorphism_order") {
  CHECK(automorphism_order(TransitionTable::from_rows({{0, 0}, {1, 1}})) == 4);

  const auto c4 = build_family({Family::kCernyS, 4, 1});
  CHECK(oracle::brute_automorphisms(4, 2, oracle::flat(c4)) == 1);
  CHECK(automorphism_order(c4) == 1);

  // A single 3-cycle letter: the rotations commute with it.
  CHECK(automorphism_order(TransitionTable::from_rows({{1}, {2}, {0}})) == 3);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % 3);
    auto e = oracle::random_table(rng, n, k);
    // Bias towards symmetric tables by sometimes copying a letter.
    if (k > 1 && trial % 3 == 0) {
      for (int q = 0; q < n; ++q) e[q * k + 1] = e[q * k];
    }
    REQUIRE(automorphism_order(oracle::table(n, k, e)) ==
            oracle::brute_automorphisms(n, k, e));
  }
}

TEST_CASE("orbit-stabilizer holds by explicit orbit enumeration for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t group = 2;
    for (int i = 2; i <= n; ++i) group *= static_cast<std::uint64_t>(i);
    oracle::for_each_labeled(n, 2, [&](const oracle::Flat& e) {
      const auto aut = automorphism_order(oracle::table(n, 2, e));
      REQUIRE(aut * oracle::orbit(n, 2, e).size() == group);
    });
  }
}

TEST_CASE("class weights over n = 3 sum to all labeled tables") {
  std::set<oracle::Flat> keys;
  oracle::for_each_labeled(3, 2, [&](const oracle::Flat& e) {
    keys.insert(key_flat(canonical_key(oracle::table(3, 2, e))));
  });
  std::uint64_t total = 0;
  for (const auto& key : keys) total += 12 / automorphism_order(oracle::table(3, 2, key));
  CHECK(total == 729);
}

TEST_CASE("prefix pruning never rejects a prefix of a canonical table") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto form = canonical_form(oracle::table(n, 2, oracle::random_table(rng, n, 2)));
    for (int rows = 1; rows <= n; ++rows) {
      REQUIRE_FALSE(detail::has_smaller_relabeling(form.entries(), n, 2, rows));
    }
  }
}
