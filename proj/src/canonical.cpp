#include "synccensus/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace synccensus {

namespace detail {

const std::vector<std::vector<Letter>>& letter_permutations(int k) {
  static const auto table = [] {
    std::array<std::vector<std::vector<Letter>>, kMaxLetters + 1> out;
    for (int size = 1; size <= kMaxLetters; ++size) {
      std::vector<Letter> p(size);
      std::iota(p.begin(), p.end(), Letter{0});
      do {
        out[size].push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }();
  return table.at(k);
}

namespace {

// Relabeling state shared by the searches below. label[q] is the new label of
// original state q (or -1); inv[i] is the original state carrying label i.
struct Labeling {
  std::array<std::int8_t, kMaxStates> label;
  std::array<State, kMaxStates> inv;
  int next = 0;

  void reset() {
    label.fill(-1);
    next = 0;
  }
  void assign(State q) {
    label[q] = static_cast<std::int8_t>(next);
    inv[next] = q;
    ++next;
  }
  void undo_to(int i) {
    for (int m = i; m < next; ++m) label[inv[m]] = -1;
    next = i;
  }
};

class SmallerSearch {
 public:
  SmallerSearch(std::span<const State> e, int n, int k, int known)
      : e_(e.data()), n_(n), k_(k), known_(known) {}

  bool run() {
    for (const auto& perm : letter_permutations(k_)) {
      perm_ = perm.data();
      lab_.reset();
      if (row(0)) return true;
    }
    return false;
  }

 private:
  bool row(int i) {
    if (i >= n_ || i >= known_) return false;
    if (i == lab_.next) {
      for (int u = 0; u < known_; ++u) {
        if (lab_.label[u] >= 0) continue;
        lab_.assign(static_cast<State>(u));
        if (fill(i)) return true;
        lab_.undo_to(i);
      }
      return false;
    }
    return fill(i);
  }

  bool fill(int i) {
    const State x = lab_.inv[i];
    if (x >= known_) return false;
    const State* src = e_ + x * k_;
    const State* ref = e_ + i * k_;
    for (int j = 0; j < k_; ++j) {
      const State y = src[perm_[j]];
      if (lab_.label[y] < 0) lab_.assign(y);
      const int v = lab_.label[y];
      if (v < ref[j]) return true;
      if (v > ref[j]) return false;
    }
    return row(i + 1);
  }

  const State* e_;
  int n_;
  int k_;
  int known_;
  const Letter* perm_ = nullptr;
  Labeling lab_;
};

class MinSearch {
 public:
  explicit MinSearch(const TransitionTable& t)
      : e_(t.entries().data()), n_(t.states()), k_(t.letters()) {}

  CanonicalKey run() {
    for (const auto& perm : letter_permutations(k_)) {
      perm_ = perm.data();
      lab_.reset();
      row(0, have_best_ ? 0 : -1);
    }
    return CanonicalKey{std::vector<State>(best_.begin(), best_.begin() + n_ * k_)};
  }

 private:
  // cmp == 0: equal to best_ so far; cmp < 0: already below best_.
  void row(int i, int cmp) {
    if (i == n_) {
      if (cmp < 0) {
        best_ = cur_;
        have_best_ = true;
        ++updates_;
      }
      return;
    }
    if (i == lab_.next) {
      for (int u = 0; u < n_; ++u) {
        if (lab_.label[u] >= 0) continue;
        const auto before = updates_;
        lab_.assign(static_cast<State>(u));
        fill(i, cmp);
        lab_.undo_to(i);
        if (updates_ != before) cmp = 0;
      }
      return;
    }
    fill(i, cmp);
  }

  void fill(int i, int cmp) {
    const State* src = e_ + lab_.inv[i] * k_;
    for (int j = 0; j < k_; ++j) {
      const State y = src[perm_[j]];
      if (lab_.label[y] < 0) lab_.assign(y);
      const auto v = static_cast<State>(lab_.label[y]);
      const int p = i * k_ + j;
      cur_[p] = v;
      if (cmp == 0) {
        if (v < best_[p]) {
          cmp = -1;
        } else if (v > best_[p]) {
          return;
        }
      }
    }
    row(i + 1, cmp);
  }

  const State* e_;
  int n_;
  int k_;
  const Letter* perm_ = nullptr;
  Labeling lab_;
  std::array<State, kMaxStates * kMaxLetters> cur_{};
  std::array<State, kMaxStates * kMaxLetters> best_{};
  bool have_best_ = false;
  std::uint64_t updates_ = 0;
};

// Counts state bijections pi with t[pi(q)][sigma(a)] == pi(t[q][a]) for a
// fixed letter bijection sigma. Each choice is propagated along transitions
// before branching again.
class AutomorphismSearch {
 public:
  AutomorphismSearch(const TransitionTable& t, const std::vector<Letter>& sigma)
      : t_(t), sigma_(sigma), n_(t.states()), k_(t.letters()) {
    image_.fill(-1);
    used_.fill(false);
  }

  std::uint64_t count() { return branch(); }

 private:
  std::uint64_t branch() {
    int q = 0;
    while (q < n_ && image_[q] >= 0) ++q;
    if (q == n_) return 1;
    std::uint64_t total = 0;
    for (int v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      const int mark = static_cast<int>(trail_.size());
      if (map(static_cast<State>(q), static_cast<State>(v)) && propagate(mark)) {
        total += branch();
      }
      unwind(mark);
    }
    return total;
  }

  bool map(State q, State v) {
    if (image_[q] >= 0) return image_[q] == v;
    if (used_[v]) return false;
    image_[q] = static_cast<std::int8_t>(v);
    used_[v] = true;
    trail_.push_back(q);
    return true;
  }

  bool propagate(int from) {
    for (std::size_t i = static_cast<std::size_t>(from); i < trail_.size(); ++i) {
      const State q = trail_[i];
      const auto v = static_cast<State>(image_[q]);
      for (int a = 0; a < k_; ++a) {
        const State y = t_.target(q, static_cast<Letter>(a));
        const State w = t_.target(v, sigma_[a]);
        if (!map(y, w)) return false;
      }
    }
    return true;
  }

  void unwind(int mark) {
    while (static_cast<int>(trail_.size()) > mark) {
      const State q = trail_.back();
      trail_.pop_back();
      used_[static_cast<State>(image_[q])] = false;
      image_[q] = -1;
    }
  }

  const TransitionTable& t_;
  const std::vector<Letter>& sigma_;
  int n_;
  int k_;
  std::array<std::int8_t, kMaxStates> image_;
  std::array<bool, kMaxStates> used_;
  std::vector<State> trail_;
};

}  // namespace

bool has_smaller_relabeling(std::span<const State> entries, int n, int k,
                            int known_rows) {
  return SmallerSearch(entries, n, k, known_rows).run();
}

}  // namespace detail

CanonicalKey serialize(const TransitionTable& t) {
  const auto e = t.entries();
  return CanonicalKey{std::vector<State>(e.begin(), e.end())};
}

CanonicalKey canonical_key(const TransitionTable& t) {
  return detail::MinSearch(t).run();
}

TransitionTable canonical_form(const TransitionTable& t) {
  const auto key = canonical_key(t);
  return TransitionTable(t.states(), t.letters(),
                         std::span<const State>(key.entries));
}

bool is_self_canonical(const TransitionTable& t) {
  return !detail::has_smaller_relabeling(t.entries(), t.states(), t.letters(),
                                         t.states());
}

std::uint64_t automorphism_order(const TransitionTable& t) {
  std::uint64_t total = 0;
  for (const auto& perm : detail::letter_permutations(t.letters())) {
    // perm lists, per column, the letter read there; invert it to get the
    // old -> new letter map the equation needs.
    std::vector<Letter> sigma(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) sigma[perm[j]] = static_cast<Letter>(j);
    total += detail::AutomorphismSearch(t, sigma).count();
  }
  return total;
}

}  // namespace synccensus
