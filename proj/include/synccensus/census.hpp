#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synccensus/automaton.hpp"
#include "synccensus/enumerator.hpp"

namespace synccensus {

// Class counts reach 1.4e13 at n = 10 and labeled totals n^(2n) overflow 64
// bits at n = 16.
using Count = unsigned __int128;

std::string to_string(Count c);
// Throws std::invalid_argument on anything but a plain decimal number.
Count parse_count(std::string_view text);

// Reset length -> number of automata.
using Distribution = std::map<int, Count>;

struct Member {
  int length = 0;
  bool strongly_connected = false;
  TransitionTable table;
  std::optional<Word> witness;
};

// Result of a census over one slice of the enumeration space. All counters
// are per isomorphism class, or per labeled table for a labeled census.
struct Histogram {
  int n = 0;
  ClassFilter filter = ClassFilter::kAll;
  bool labeled = false;
  std::optional<int> min_record_length;

  Distribution counts;     // synchronizing automata by reset length
  Distribution sc_counts;  // strongly connected ones only
  Count total = 0;
  Count synchronizing = 0;
  Count strongly_connected = 0;
  Count sc_sync = 0;
  Count irreducible = 0;
  Count below_threshold = 0;  // synchronizing, length < min_record_length

  // Automata at or above the member threshold, sorted by (length, table).
  std::vector<Member> members;
  // First automaton in enumeration order with the largest reset length.
  std::optional<Member> longest;

  // Entrywise sum. Throws std::invalid_argument if the histograms describe
  // different censuses (n, filter, model or threshold differ).
  void merge(const Histogram& other);

  std::optional<int> max_length() const;
};

struct CensusOptions {
  // Lengths below this are only counted in below_threshold.
  std::optional<int> min_record_length;
  // Record member tables from this length on; defaults to n^2 - 3n + 2.
  std::optional<int> member_threshold;
  bool witness = false;  // attach shortest reset words to members
  bool labeled = false;  // weight each class by its labeled orbit size
};

int default_member_threshold(int n);

// Census of one shard on the calling thread.
Histogram run_census(int n, ClassFilter filter, const ShardSpec& shard = {},
                     const CensusOptions& options = {});

struct ShardRecord {
  std::vector<State> prefix;
  std::uint64_t visited = 0;
  Histogram histogram;
};

struct CensusJob {
  int n = 0;
  ClassFilter filter = ClassFilter::kAll;
  ShardSpec shard;
  CensusOptions options;
  int workers = 1;
  // Completed work units are appended here; units already present are
  // skipped and their stored results reused.
  std::optional<std::filesystem::path> journal;
};

struct CensusOutcome {
  Histogram histogram;
  std::vector<ShardRecord> records;  // one per work unit, in enumeration order
  std::size_t resumed = 0;           // units taken from the journal
};

// Splits the job into work units (subtrees a few rows deep), runs them on a
// worker pool and merges the results in enumeration order, so the outcome
// does not depend on scheduling.
CensusOutcome run_census_job(const CensusJob& job);

// Maximal runs of lengths with zero count, inside [floor, max_length).
struct Gap {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const Gap&, const Gap&) = default;
};

struct GapReport {
  std::optional<int> max_length;
  int floor = 0;
  std::vector<Gap> gaps;
};

GapReport find_gaps(const Distribution& dist, int floor);
// Floor defaults to the smallest length present.
GapReport find_gaps(const Distribution& dist);

struct IslandReport {
  int lo = 0;  // n^2 - 3n + 2
  int hi = 0;  // n^2 - 3n + 4
  Distribution counts;
  std::vector<Member> members;
};

IslandReport island_members(const Distribution& dist,
                            const std::vector<Member>& members, int n);
IslandReport island_members(const Histogram& h);

// Labeled-model census: every class counts n! * 2 / |Aut| times.
Histogram labeled_counts(int n, int workers = 1);

struct CernyReport {
  int n = 0;
  ClassFilter filter = ClassFilter::kAll;
  int bound = 0;  // (n - 1)^2
  std::optional<int> max_length;
  std::optional<Member> argmax;
  Count violations = 0;
  Count visited = 0;

  bool passed() const { return violations == 0; }
};

CernyReport verify_cerny(int n, ClassFilter filter, int workers = 1);

}  // namespace synccensus
