#include "synccensus/io.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace synccensus {

json table_to_json(const TransitionTable& t) {
  json delta = json::array();
  for (int q = 0; q < t.states(); ++q) {
    json row = json::array();
    for (int a = 0; a < t.letters(); ++a) {
      row.push_back(static_cast<int>(t.target(static_cast<State>(q), static_cast<Letter>(a))));
    }
    delta.push_back(std::move(row));
  }
  return json{{"n", t.states()}, {"k", t.letters()}, {"delta", std::move(delta)}};
}

TransitionTable table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("k") ||
      !j.contains("delta")) {
    throw std::invalid_argument("table JSON needs fields n, k and delta");
  }
  if (!j.at("n").is_number_integer() || !j.at("k").is_number_integer() ||
      !j.at("delta").is_array()) {
    throw std::invalid_argument("table JSON has fields of the wrong type");
  }
  const int n = j.at("n").get<int>();
  const int k = j.at("k").get<int>();
  const auto& delta = j.at("delta");
  if (delta.size() != static_cast<std::size_t>(std::max(n, 0))) {
    throw std::invalid_argument("delta must have n rows");
  }
  std::vector<int> flat;
  for (const auto& row : delta) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(std::max(k, 0))) {
      throw std::invalid_argument("every delta row must have k entries");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw std::invalid_argument("delta entries must be integers");
      }
      flat.push_back(v.get<int>());
    }
  }
  return TransitionTable(n, k, std::span<const int>(flat));
}

TransitionTable parse_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("table is not valid JSON: ") + e.what());
  }
  return table_from_json(j);
}

json reset_result_to_json(const ResetResult& r) {
  json out{{"synchronizing", r.synchronizing()}};
  out["length"] = r.length ? json(*r.length) : json(nullptr);
  out["witness"] = r.witness ? json(word_to_string(*r.witness)) : json(nullptr);
  return out;
}

json count_to_json(Count c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) {
    return json(static_cast<std::uint64_t>(c));
  }
  return json(to_string(c));
}

Count count_from_json(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<Count>(j.get<std::int64_t>());
  }
  if (j.is_string()) return parse_count(j.get<std::string>());
  throw std::invalid_argument("count must be a nonnegative integer");
}

namespace {

json distribution_to_json(const Distribution& d) {
  json out = json::array();
  for (const auto& [len, c] : d) out.push_back(json::array({len, count_to_json(c)}));
  return out;
}

Distribution distribution_from_json(const json& j) {
  Distribution d;
  for (const auto& item : j) d[item.at(0).get<int>()] = count_from_json(item.at(1));
  return d;
}

json member_to_json(const Member& m) {
  json out{{"length", m.length}, {"sc", m.strongly_connected},
           {"table", table_to_json(m.table)}};
  if (m.witness) out["witness"] = word_to_string(*m.witness);
  return out;
}

Member member_from_json(const json& j) {
  Member m{j.at("length").get<int>(), j.at("sc").get<bool>(),
           table_from_json(j.at("table")), std::nullopt};
  if (j.contains("witness")) {
    Word w;
    for (char c : j.at("witness").get<std::string>()) w.push_back(static_cast<Letter>(c - 'a'));
    m.witness = std::move(w);
  }
  return m;
}

json optional_int(const std::optional<int>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<int> optional_int_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

json totals_to_json(const Histogram& h) {
  return json{{"all", count_to_json(h.total)},
              {"synchronizing", count_to_json(h.synchronizing)},
              {"strongly_connected", count_to_json(h.strongly_connected)},
              {"sc_sync", count_to_json(h.sc_sync)},
              {"irreducible", count_to_json(h.irreducible)},
              {"below_threshold", count_to_json(h.below_threshold)}};
}

}  // namespace

json histogram_to_json(const Histogram& h) {
  json out{{"n", h.n},
           {"filter", to_string(h.filter)},
           {"labeled", h.labeled},
           {"min_record_length", optional_int(h.min_record_length)},
           {"totals", totals_to_json(h)},
           {"counts", distribution_to_json(h.counts)},
           {"sc_counts", distribution_to_json(h.sc_counts)}};
  json members = json::array();
  for (const auto& m : h.members) members.push_back(member_to_json(m));
  out["members"] = std::move(members);
  out["longest"] = h.longest ? member_to_json(*h.longest) : json(nullptr);
  return out;
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  try {
    h.n = j.at("n").get<int>();
    h.filter = parse_filter(j.at("filter").get<std::string>());
    h.labeled = j.at("labeled").get<bool>();
    h.min_record_length = optional_int_from(j.at("min_record_length"));
    const auto& t = j.at("totals");
    h.total = count_from_json(t.at("all"));
    h.synchronizing = count_from_json(t.at("synchronizing"));
    h.strongly_connected = count_from_json(t.at("strongly_connected"));
    h.sc_sync = count_from_json(t.at("sc_sync"));
    h.irreducible = count_from_json(t.at("irreducible"));
    h.below_threshold = count_from_json(t.at("below_threshold"));
    h.counts = distribution_from_json(j.at("counts"));
    h.sc_counts = distribution_from_json(j.at("sc_counts"));
    for (const auto& m : j.at("members")) h.members.push_back(member_from_json(m));
    if (!j.at("longest").is_null()) h.longest = member_from_json(j.at("longest"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed histogram: ") + e.what());
  }
  return h;
}

json shard_record_to_json(const ShardRecord& r) {
  const Histogram& h = r.histogram;
  json prefix = json::array();
  for (State v : r.prefix) prefix.push_back(static_cast<int>(v));
  return json{{"n", h.n},
              {"filter", to_string(h.filter)},
              {"labeled", h.labeled},
              {"min_record_length", optional_int(h.min_record_length)},
              {"shard", std::move(prefix)},
              {"visited", r.visited},
              {"histogram", histogram_to_json(h)}};
}

ShardRecord shard_record_from_json(const json& j) {
  ShardRecord r;
  try {
    for (const auto& v : j.at("shard")) r.prefix.push_back(v.get<State>());
    r.visited = j.at("visited").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed shard record: ") + e.what());
  }
  r.histogram = histogram_from_json(j.at("histogram"));
  return r;
}

std::vector<ShardRecord> read_journal(const std::filesystem::path& path) {
  std::vector<ShardRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::parse_error&) {
      if (i + 1 == lines.size()) break;
      throw std::invalid_argument("corrupt journal line " + std::to_string(i + 1) +
                                  " in " + path.string());
    }
    out.push_back(shard_record_from_json(j));
  }
  return out;
}

void repair_journal(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size == 0) return;
  std::string data;
  {
    std::ifstream in(path, std::ios::binary);
    data.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (data.back() == '\n') return;
  const auto keep = data.rfind('\n');
  std::filesystem::resize_file(path, keep == std::string::npos ? 0 : keep + 1);
}

void append_journal(const std::filesystem::path& path, const ShardRecord& r) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open journal " + path.string());
  out << shard_record_to_json(r).dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed writing journal " + path.string());
}

void write_distribution_csv(std::ostream& out, const Distribution& dist) {
  out << "length,count\n";
  for (const auto& [len, c] : dist) {
    if (c != 0) out << len << ',' << to_string(c) << '\n';
  }
}

Distribution read_distribution_csv(std::istream& in) {
  Distribution d;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "length,count") {
    throw std::invalid_argument("CSV header must be 'length,count'");
  }
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("CSV row " + std::to_string(row) + " has no comma");
    }
    int len = 0;
    try {
      std::size_t used = 0;
      len = std::stoi(line.substr(0, comma), &used);
      if (used != comma || len < 0) throw std::invalid_argument("length");
    } catch (const std::exception&) {
      throw std::invalid_argument("CSV row " + std::to_string(row) + " has a bad length");
    }
    d[len] += parse_count(line.substr(comma + 1));
  }
  return d;
}

json census_sidecar(const Histogram& h, const std::vector<ShardRecord>& records) {
  json shards = json::array();
  for (const auto& r : records) {
    json prefix = json::array();
    for (State v : r.prefix) prefix.push_back(static_cast<int>(v));
    shards.push_back(std::move(prefix));
  }
  return json{{"n", h.n},
              {"filter", to_string(h.filter)},
              {"model", h.labeled ? "labeled" : "unlabeled"},
              {"min_record_length", optional_int(h.min_record_length)},
              {"totals", totals_to_json(h)},
              {"shards", std::move(shards)}};
}

}  // namespace synccensus
