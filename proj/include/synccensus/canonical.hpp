#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "synccensus/automaton.hpp"

namespace synccensus {

// Row-major serialization delta[0][0], delta[0][1], ..., delta[n-1][k-1].
struct CanonicalKey {
  std::vector<State> entries;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey serialize(const TransitionTable& t);

// Lexicographically least serialization over all simultaneous relabelings of
// states and letters. Two tables get the same key iff they are isomorphic.
//
// The minimum is always attained by a relabeling in breadth-first form: rows
// are labelled in order, and a target not yet labelled receives the next
// free label. The only freedom is which unlabelled state opens a row when
// the labelled set is closed, plus the letter order, so the search branches
// on those choices alone and prunes against the best serialization so far.
CanonicalKey canonical_key(const TransitionTable& t);

TransitionTable canonical_form(const TransitionTable& t);

// canonical_key(t) == serialize(t), decided without building the key.
bool is_self_canonical(const TransitionTable& t);

// Number of pairs (state bijection, letter bijection) fixing t.
std::uint64_t automorphism_order(const TransitionTable& t);

namespace detail {

// All permutations of {0..k-1} in lexicographic order; perms[i][j] is the
// original letter read in column j.
const std::vector<std::vector<Letter>>& letter_permutations(int k);

// Searches for a breadth-first relabeling of the table whose serialization is
// strictly below `entries` on the first known_rows rows. Only rows
// [0, known_rows) of `entries` are read. When known_rows == n this decides
// non-canonicity exactly; for a prefix it is a sound pruning test: a hit
// rules out every completion.
bool has_smaller_relabeling(std::span<const State> entries, int n, int k,
                            int known_rows);

}  // namespace detail

}  // namespace synccensus
