#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace synccensus {

using State = std::uint8_t;
using Letter = std::uint8_t;

inline constexpr int kMaxStates = 16;
inline constexpr int kMaxLetters = 4;

// A set of states packed one bit per state. Only bits below n are used.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr StateSet full(int n) {
    return StateSet(n >= 32 ? ~0u : ((1u << n) - 1u));
  }
  static constexpr StateSet singleton(State q) { return StateSet(1u << q); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_singleton() const { return std::has_single_bit(bits_); }
  constexpr bool contains(State q) const { return (bits_ >> q) & 1u; }
  constexpr void insert(State q) { bits_ |= 1u << q; }

  friend constexpr bool operator==(StateSet, StateSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

// Letter indices in [0, k). Rendered as "a", "b", ... in text output.
using Word = std::vector<Letter>;

std::string word_to_string(const Word& w);

// Complete deterministic transition function on n states and k letters,
// stored row-major: entry (q, a) lives at q * k + a. This layout is also the
// serialization order used for canonical keys.
class TransitionTable {
 public:
  // Throws std::invalid_argument on n or k out of range, a wrong entry
  // count, or an entry that is not a state.
  TransitionTable(int n, int k, std::span<const State> entries);
  TransitionTable(int n, int k, std::span<const int> entries);

  // rows[q][a] is the target of state q under letter a.
  static TransitionTable from_rows(const std::vector<std::vector<int>>& rows);

  int states() const { return n_; }
  int letters() const { return k_; }
  State target(State q, Letter a) const { return delta_[q * k_ + a]; }
  std::span<const State> entries() const {
    return {delta_.data(), static_cast<std::size_t>(n_ * k_)};
  }

  friend bool operator==(const TransitionTable& x, const TransitionTable& y) {
    return x.n_ == y.n_ && x.k_ == y.k_ && x.delta_ == y.delta_;
  }

 private:
  std::uint8_t n_;
  std::uint8_t k_;
  std::array<State, kMaxStates * kMaxLetters> delta_{};
};

StateSet apply_letter(const TransitionTable& t, StateSet s, Letter a);

// Throws std::invalid_argument when a letter of w is not below k.
StateSet apply_word(const TransitionTable& t, StateSet s, const Word& w);

// True iff every state reaches every other state along transitions.
bool is_strongly_connected(const TransitionTable& t);

// Image of t under the state bijection `state_perm` (old -> new) and the
// letter bijection `letter_perm` (old -> new).
TransitionTable relabel(const TransitionTable& t,
                        std::span<const State> state_perm,
                        std::span<const Letter> letter_perm);

// Drops letter a; the result has k - 1 letters. Requires k >= 2.
TransitionTable remove_letter(const TransitionTable& t, Letter a);

}  // namespace synccensus
