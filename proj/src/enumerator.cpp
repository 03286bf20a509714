#include "synccensus/enumerator.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "synccensus/canonical.hpp"

namespace synccensus {

std::string to_string(ClassFilter f) {
  return f == ClassFilter::kAll ? "all" : "sc";
}

ClassFilter parse_filter(const std::string& s) {
  if (s == "all") return ClassFilter::kAll;
  if (s == "sc") return ClassFilter::kStronglyConnected;
  throw std::invalid_argument("unknown class filter '" + s + "'");
}

namespace {

constexpr int k = kCensusLetters;

// Orderly generation. Entries are chosen in serialization order subject to
// the breadth-first shape every canonical table has: an entry is at most one
// above the largest label seen so far, and a row whose state has not been
// reached yet opens a new component. After each complete row the prefix is
// tested against every relabeling that only reads finished rows.
class Generator {
 public:
  Generator(int n, ClassFilter filter)
      : n_(n), sc_only_(filter == ClassFilter::kStronglyConnected) {}

  std::uint64_t run(std::span<const State> prefix, const Visitor& visit) {
    forced_ = prefix;
    visit_ = &visit;
    stop_depth_ = -1;
    count_ = 0;
    descend(0, -1);
    return count_;
  }

  std::vector<std::vector<State>> prefixes(std::span<const State> prefix,
                                           int depth) {
    forced_ = prefix;
    visit_ = nullptr;
    stop_depth_ = depth;
    collected_.clear();
    descend(0, -1);
    return std::move(collected_);
  }

 private:
  void descend(int p, int max_label) {
    if (p == stop_depth_) {
      collected_.emplace_back(entries_.begin(), entries_.begin() + p);
      return;
    }
    if (p == n_ * k) {
      leaf();
      return;
    }
    const int i = p / k;
    const int j = p % k;
    if (j == 0 && i > max_label) {
      if (sc_only_ && i > 0) return;
      max_label = i;
    }
    const int hi = std::min(max_label + 1, n_ - 1);
    int lo = 0;
    int top = hi;
    if (p < static_cast<int>(forced_.size())) {
      lo = forced_[p];
      top = forced_[p];
      if (top > hi) return;
    }
    for (int v = lo; v <= top; ++v) {
      entries_[p] = static_cast<State>(v);
      if (j == k - 1 &&
          detail::has_smaller_relabeling(entries_, n_, k, i + 1)) {
        continue;
      }
      descend(p + 1, std::max(max_label, v));
    }
  }

  void leaf() {
    const TransitionTable t(n_, k, std::span<const State>(entries_.data(), n_ * k));
    if (sc_only_ && !is_strongly_connected(t)) return;
    ++count_;
    if (visit_ != nullptr && *visit_) (*visit_)(t);
  }

  int n_;
  bool sc_only_;
  std::array<State, kMaxStates * k> entries_{};
  std::span<const State> forced_;
  const Visitor* visit_ = nullptr;
  int stop_depth_ = -1;
  std::uint64_t count_ = 0;
  std::vector<std::vector<State>> collected_;
};

void check_n(int n) {
  if (n < 1 || n > kMaxStates) {
    throw std::invalid_argument("state count must be in [1, 16], got " +
                                std::to_string(n));
  }
}

void check_shard(int n, const ShardSpec& shard) {
  if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count) {
    throw std::invalid_argument("shard index must lie in [0, shard count)");
  }
  if (shard.prefix.size() > static_cast<std::size_t>(n * k)) {
    throw std::invalid_argument("shard prefix is longer than the table");
  }
  for (State v : shard.prefix) {
    if (v >= n) throw std::invalid_argument("shard prefix entry is not a state");
  }
}

}  // namespace

std::vector<ShardSpec> expand_shard(int n, ClassFilter filter,
                                    const ShardSpec& shard) {
  check_n(n);
  check_shard(n, shard);
  if (shard.count == 1) return {ShardSpec{shard.prefix, 1, 0}};

  // Smallest depth that yields enough subtrees to balance `count` parts.
  Generator gen(n, filter);
  const int total_depth = n * k;
  const std::size_t wanted = static_cast<std::size_t>(shard.count) * 8;
  int depth = static_cast<int>(shard.prefix.size());
  auto nodes = gen.prefixes(shard.prefix, depth);
  while (depth < total_depth && nodes.size() < wanted) {
    ++depth;
    nodes = gen.prefixes(shard.prefix, depth);
  }
  std::vector<ShardSpec> out;
  for (std::size_t i = static_cast<std::size_t>(shard.index); i < nodes.size();
       i += static_cast<std::size_t>(shard.count)) {
    out.push_back(ShardSpec{std::move(nodes[i]), 1, 0});
  }
  return out;
}

std::uint64_t enumerate(int n, ClassFilter filter, const ShardSpec& shard,
                        const Visitor& visit) {
  std::uint64_t total = 0;
  Generator gen(n, filter);
  for (const auto& part : expand_shard(n, filter, shard)) {
    total += gen.run(part.prefix, visit);
  }
  return total;
}

std::uint64_t enumerate(int n, ClassFilter filter, const Visitor& visit) {
  return enumerate(n, filter, ShardSpec{}, visit);
}

std::vector<ShardSpec> shard_space(int n, int depth, ClassFilter filter,
                                   std::span<const State> under) {
  check_n(n);
  if (depth < 0 || depth > n * k) {
    throw std::invalid_argument("shard depth must lie in [0, 2n]");
  }
  if (under.size() > static_cast<std::size_t>(depth)) {
    throw std::invalid_argument("shard depth is shorter than the prefix");
  }
  Generator gen(n, filter);
  std::vector<ShardSpec> out;
  for (auto& prefix : gen.prefixes(under, depth)) {
    out.push_back(ShardSpec{std::move(prefix), 1, 0});
  }
  return out;
}

}  // namespace synccensus
