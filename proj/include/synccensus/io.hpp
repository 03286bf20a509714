#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "synccensus/automaton.hpp"
#include "synccensus/census.hpp"
#include "synccensus/solver.hpp"

namespace synccensus {

using json = nlohmann::ordered_json;

// {"n": int, "k": int, "delta": [[int, ...], ...]}, delta[q][a] 0-based.
json table_to_json(const TransitionTable& t);
// Throws std::invalid_argument on malformed input.
TransitionTable table_from_json(const json& j);
TransitionTable parse_table(const std::string& text);

// {"synchronizing": bool, "length": int|null, "witness": "ab..."|null}
json reset_result_to_json(const ResetResult& r);

// Counts that fit 64 bits are plain numbers, larger ones decimal strings.
json count_to_json(Count c);
Count count_from_json(const json& j);

json histogram_to_json(const Histogram& h);
Histogram histogram_from_json(const json& j);

// Journal line: {"n", "filter", "labeled", "min_record_length", "shard",
// "visited", "histogram"}.
json shard_record_to_json(const ShardRecord& r);
ShardRecord shard_record_from_json(const json& j);

// Reads every record of a journal file. A truncated final line (crash while
// appending) is ignored; any other malformed line throws.
std::vector<ShardRecord> read_journal(const std::filesystem::path& path);
// Drops a torn final line so that later appends start on a fresh line.
void repair_journal(const std::filesystem::path& path);
void append_journal(const std::filesystem::path& path, const ShardRecord& r);

// `length,count` header, one row per length with a nonzero count.
void write_distribution_csv(std::ostream& out, const Distribution& dist);
Distribution read_distribution_csv(std::istream& in);

// Summary written next to the distribution CSV.
json census_sidecar(const Histogram& h, const std::vector<ShardRecord>& records);

}  // namespace synccensus
