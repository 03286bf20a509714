#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "synccensus/automaton.hpp"

namespace synccensus {

// Outcome of the shortest reset word search. `length` is empty exactly when
// the automaton is not synchronizing.
struct ResetResult {
  std::optional<int> length;
  std::optional<Word> witness;

  bool synchronizing() const { return length.has_value(); }
};

// Decides synchronizability through the pair automaton: t synchronizes iff
// every pair of states can be merged by some word. O(n^2 k).
bool is_synchronizing(const TransitionTable& t);

// Breadth-first search over subsets of Q reachable from Q itself. Owns the
// visited array (2^n entries) and parent links so repeated calls from one
// worker reuse the allocation. Not safe to share between threads.
class ResetSolver {
 public:
  ResetResult solve(const TransitionTable& t, bool want_witness = false);

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> parent_letter_;
  std::uint32_t epoch_ = 0;
};

ResetResult shortest_reset_length(const TransitionTable& t,
                                  bool want_witness = false);

// Synchronizing, and no automaton obtained by deleting one letter is. The
// one-state automaton is excluded.
bool is_irreducible(const TransitionTable& t);

}  // namespace synccensus
