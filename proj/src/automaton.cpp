#include "synccensus/automaton.hpp"

#include <stdexcept>

namespace synccensus {

std::string word_to_string(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(static_cast<char>('a' + a));
  return out;
}

namespace {

void check_shape(int n, int k, std::size_t count) {
  if (n < 1 || n > kMaxStates) {
    throw std::invalid_argument("state count must be in [1, 16], got " +
                                std::to_string(n));
  }
  if (k < 1 || k > kMaxLetters) {
    throw std::invalid_argument("letter count must be in [1, 4], got " +
                                std::to_string(k));
  }
  if (count != static_cast<std::size_t>(n * k)) {
    throw std::invalid_argument("expected " + std::to_string(n * k) +
                                " transitions, got " + std::to_string(count));
  }
}

}  // namespace

TransitionTable::TransitionTable(int n, int k, std::span<const State> entries)
    : n_(static_cast<std::uint8_t>(n)), k_(static_cast<std::uint8_t>(k)) {
  check_shape(n, k, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= n) {
      throw std::invalid_argument("transition target " +
                                  std::to_string(entries[i]) +
                                  " is not a state");
    }
    delta_[i] = entries[i];
  }
}

TransitionTable::TransitionTable(int n, int k, std::span<const int> entries)
    : n_(static_cast<std::uint8_t>(n)), k_(static_cast<std::uint8_t>(k)) {
  check_shape(n, k, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0 || entries[i] >= n) {
      throw std::invalid_argument("transition target " +
                                  std::to_string(entries[i]) +
                                  " is not a state");
    }
    delta_[i] = static_cast<State>(entries[i]);
  }
}

TransitionTable TransitionTable::from_rows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw std::invalid_argument("table has no states");
  const std::size_t k = rows.front().size();
  std::vector<int> flat;
  flat.reserve(rows.size() * k);
  for (const auto& row : rows) {
    if (row.size() != k) {
      throw std::invalid_argument("rows have different letter counts");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return TransitionTable(static_cast<int>(rows.size()), static_cast<int>(k),
                         std::span<const int>(flat));
}

StateSet apply_letter(const TransitionTable& t, StateSet s, Letter a) {
  std::uint32_t in = s.bits();
  std::uint32_t out = 0;
  while (in != 0) {
    const int q = std::countr_zero(in);
    in &= in - 1;
    out |= 1u << t.target(static_cast<State>(q), a);
  }
  return StateSet(out);
}

StateSet apply_word(const TransitionTable& t, StateSet s, const Word& w) {
  for (Letter a : w) {
    if (a >= t.letters()) {
      throw std::invalid_argument("letter index out of range");
    }
    s = apply_letter(t, s, a);
  }
  return s;
}

bool is_strongly_connected(const TransitionTable& t) {
  const int n = t.states();
  const int k = t.letters();
  std::array<std::uint32_t, kMaxStates> succ{};
  std::array<std::uint32_t, kMaxStates> pred{};
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < k; ++a) {
      const State r = t.target(static_cast<State>(q), static_cast<Letter>(a));
      succ[q] |= 1u << r;
      pred[r] |= 1u << q;
    }
  }
  auto closure = [n](const std::array<std::uint32_t, kMaxStates>& adj) {
    std::uint32_t seen = 1;
    std::uint32_t frontier = 1;
    while (frontier != 0) {
      std::uint32_t next = 0;
      while (frontier != 0) {
        const int q = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= adj[q];
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == StateSet::full(n).bits();
  };
  return closure(succ) && closure(pred);
}

TransitionTable relabel(const TransitionTable& t,
                        std::span<const State> state_perm,
                        std::span<const Letter> letter_perm) {
  const int n = t.states();
  const int k = t.letters();
  if (state_perm.size() != static_cast<std::size_t>(n) ||
      letter_perm.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("permutation size mismatch");
  }
  std::array<State, kMaxStates * kMaxLetters> out{};
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < k; ++a) {
      out[state_perm[q] * k + letter_perm[a]] =
          state_perm[t.target(static_cast<State>(q), static_cast<Letter>(a))];
    }
  }
  return TransitionTable(n, k, std::span<const State>(out.data(), n * k));
}

TransitionTable remove_letter(const TransitionTable& t, Letter a) {
  const int n = t.states();
  const int k = t.letters();
  if (k < 2 || a >= k) throw std::invalid_argument("cannot remove letter");
  std::vector<State> out;
  out.reserve(n * (k - 1));
  for (int q = 0; q < n; ++q) {
    for (int b = 0; b < k; ++b) {
      if (b != a) out.push_back(t.target(static_cast<State>(q), static_cast<Letter>(b)));
    }
  }
  return TransitionTable(n, k - 1, std::span<const State>(out));
}

}  // namespace synccensus
