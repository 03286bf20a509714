#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "synccensus/automaton.hpp"

namespace synccensus {

// The enumerator works over two letters, as the census does.
inline constexpr int kCensusLetters = 2;

enum class ClassFilter { kAll, kStronglyConnected };

std::string to_string(ClassFilter f);
// Accepts "all" and "sc"; throws std::invalid_argument otherwise.
ClassFilter parse_filter(const std::string& s);

// A slice of the enumeration space. `prefix` fixes the first entries of the
// serialized table. `count` > 1 additionally splits the subtree below the
// prefix round-robin into `count` parts and selects part `index`.
struct ShardSpec {
  std::vector<State> prefix;
  int count = 1;
  int index = 0;

  friend bool operator==(const ShardSpec&, const ShardSpec&) = default;
};

using Visitor = std::function<void(const TransitionTable&)>;

// Visits one self-canonical table per isomorphism class of n-state,
// two-letter automata, in increasing order of serialization. Returns the
// number of visits. Throws std::invalid_argument for n outside [1, 16] or an
// inconsistent shard.
std::uint64_t enumerate(int n, ClassFilter filter, const ShardSpec& shard,
                        const Visitor& visit);
std::uint64_t enumerate(int n, ClassFilter filter, const Visitor& visit);

// All generation-tree prefixes with `depth` entries, in enumeration order.
// Their subtrees partition the space: enumerating every returned shard visits
// each class exactly once.
// With `under` set, only prefixes extending it are returned.
std::vector<ShardSpec> shard_space(int n, int depth,
                                   ClassFilter filter = ClassFilter::kAll,
                                   std::span<const State> under = {});

// Replaces a count/index shard by the explicit prefixes it covers.
std::vector<ShardSpec> expand_shard(int n, ClassFilter filter,
                                    const ShardSpec& shard);

}  // namespace synccensus
