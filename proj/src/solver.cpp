#include "synccensus/solver.hpp"

#include <algorithm>
#include <array>

namespace synccensus {

namespace {

constexpr int kMaxPairs = kMaxStates * (kMaxStates - 1) / 2;

// Index of the unordered pair {p, q}, p != q.
inline int pair_index(int p, int q, int n) {
  if (p > q) std::swap(p, q);
  return p * (2 * n - p - 1) / 2 + (q - p - 1);
}

bool pairs_all_mergeable(const TransitionTable& t) {
  const int n = t.states();
  const int k = t.letters();
  if (n == 1) return true;
  const int pairs = n * (n - 1) / 2;

  // Reverse edges of the pair automaton, stored as linked lists.
  std::array<std::int16_t, kMaxPairs> head;
  head.fill(-1);
  std::array<std::int16_t, kMaxPairs * kMaxLetters> link;
  std::array<std::int16_t, kMaxPairs * kMaxLetters> source;
  std::array<bool, kMaxPairs> good{};
  std::array<std::int16_t, kMaxPairs> queue;
  int edges = 0;
  int tail = 0;

  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const int from = pair_index(p, q, n);
      for (int a = 0; a < k; ++a) {
        const int x = t.target(static_cast<State>(p), static_cast<Letter>(a));
        const int y = t.target(static_cast<State>(q), static_cast<Letter>(a));
        if (x == y) {
          if (!good[from]) {
            good[from] = true;
            queue[tail++] = static_cast<std::int16_t>(from);
          }
        } else {
          const int to = pair_index(x, y, n);
          source[edges] = static_cast<std::int16_t>(from);
          link[edges] = head[to];
          head[to] = static_cast<std::int16_t>(edges);
          ++edges;
        }
      }
    }
  }
  for (int front = 0; front < tail; ++front) {
    for (int e = head[queue[front]]; e >= 0; e = link[e]) {
      const int from = source[e];
      if (!good[from]) {
        good[from] = true;
        queue[tail++] = static_cast<std::int16_t>(from);
      }
    }
  }
  return tail == pairs;
}

}  // namespace

bool is_synchronizing(const TransitionTable& t) {
  return pairs_all_mergeable(t);
}

ResetResult ResetSolver::solve(const TransitionTable& t, bool want_witness) {
  const int n = t.states();
  const int k = t.letters();
  const std::uint32_t full = StateSet::full(n).bits();
  if (n == 1) {
    ResetResult r{0, std::nullopt};
    if (want_witness) r.witness = Word{};
    return r;
  }

  const std::size_t space = std::size_t{1} << n;
  if (stamp_.size() < space) {
    stamp_.assign(space, 0);
    queue_.resize(space);
    epoch_ = 0;
  }
  if (want_witness && parent_.size() < space) {
    parent_.resize(space);
    parent_letter_.resize(space);
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }

  // Level-by-level BFS; depth is tracked by level boundaries in the queue.
  std::size_t head = 0;
  std::size_t tail = 0;
  queue_[tail++] = full;
  stamp_[full] = epoch_;
  int depth = 0;
  while (head < tail) {
    const std::size_t level_end = tail;
    ++depth;
    for (; head < level_end; ++head) {
      const std::uint32_t s = queue_[head];
      for (int a = 0; a < k; ++a) {
        const std::uint32_t img =
            apply_letter(t, StateSet(s), static_cast<Letter>(a)).bits();
        if (stamp_[img] == epoch_) continue;
        stamp_[img] = epoch_;
        if (want_witness) {
          parent_[img] = s;
          parent_letter_[img] = static_cast<Letter>(a);
        }
        if ((img & (img - 1)) == 0) {
          ResetResult r{depth, std::nullopt};
          if (want_witness) {
            Word w;
            for (std::uint32_t cur = img; cur != full; cur = parent_[cur]) {
              w.push_back(parent_letter_[cur]);
            }
            std::reverse(w.begin(), w.end());
            r.witness = std::move(w);
          }
          return r;
        }
        queue_[tail++] = img;
      }
    }
  }
  return ResetResult{};
}

ResetResult shortest_reset_length(const TransitionTable& t, bool want_witness) {
  ResetSolver solver;
  return solver.solve(t, want_witness);
}

bool is_irreducible(const TransitionTable& t) {
  if (t.states() == 1) return false;
  if (!is_synchronizing(t)) return false;
  if (t.letters() == 1) return true;
  for (int a = 0; a < t.letters(); ++a) {
    if (is_synchronizing(remove_letter(t, static_cast<Letter>(a)))) return false;
  }
  return true;
}

}  // namespace synccensus
