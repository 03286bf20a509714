#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "synccensus/census.hpp"
#include "synccensus/enumerator.hpp"
#include "synccensus/families.hpp"
#include "synccensus/io.hpp"
#include "synccensus/solver.hpp"

namespace synccensus::cli {

namespace {

namespace fs = std::filesystem;

// Inconsistent or invalid flags; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShardFlags {
  int count = 1;
  int index = 0;
  std::string prefix;
};

void add_shard_flags(CLI::App* cmd, ShardFlags& f) {
  cmd->add_option("--shard-count", f.count, "Split the space into this many parts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--shard-index", f.index, "Part to run, in [0, shard-count)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--shard-prefix", f.prefix,
                  "Comma-separated leading table entries fixing a subtree");
}

ShardSpec make_shard(const ShardFlags& f, int n) {
  if (f.index >= f.count) throw UsageError("--shard-index must be below --shard-count");
  ShardSpec spec;
  spec.count = f.count;
  spec.index = f.index;
  if (!f.prefix.empty()) {
    std::stringstream ss(f.prefix);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int v = -1;
      try {
        std::size_t used = 0;
        v = std::stoi(item, &used);
        if (used != item.size()) v = -1;
      } catch (const std::exception&) {
        v = -1;
      }
      if (v < 0 || v >= n) throw UsageError("bad --shard-prefix entry '" + item + "'");
      spec.prefix.push_back(static_cast<State>(v));
    }
    if (spec.prefix.size() > static_cast<std::size_t>(2 * n)) {
      throw UsageError("--shard-prefix is longer than the table");
    }
  }
  return spec;
}

ClassFilter filter_flag(const std::string& s) {
  try {
    return parse_filter(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_n(int n) {
  if (n < 1 || n > kMaxStates) throw UsageError("--n must be in [1, 16]");
}

void check_writable(const fs::path& path) {
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw UsageError("cannot write " + path.string());
}

fs::path sidecar_path(const fs::path& out) {
  fs::path p = out;
  return p.replace_extension(".json");
}

fs::path journal_path(const fs::path& out) {
  fs::path p = out;
  return p.replace_extension(".journal.jsonl");
}

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_census_outputs(const Histogram& h, const std::vector<ShardRecord>& records,
                          const std::optional<fs::path>& out_path, std::ostream& out) {
  json side = census_sidecar(h, records);
  side["max_length"] = h.max_length() ? json(*h.max_length()) : json(nullptr);
  json members = json::array();
  for (const auto& m : h.members) {
    json item{{"length", m.length}, {"sc", m.strongly_connected},
              {"table", table_to_json(m.table)}};
    if (m.witness) item["witness"] = word_to_string(*m.witness);
    members.push_back(std::move(item));
  }
  side["members"] = std::move(members);

  if (out_path) {
    std::ofstream csv(*out_path, std::ios::trunc);
    write_distribution_csv(csv, h.counts);
    std::ofstream js(sidecar_path(*out_path), std::ios::trunc);
    js << side.dump(2) << '\n';
    if (!csv || !js) throw std::runtime_error("failed writing census output");
  } else {
    write_distribution_csv(out, h.counts);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exhaustive census of synchronizing two-letter automata", "synccensus"};
  app.require_subcommand(1);

  // enumerate
  int en_n = 0;
  std::string en_filter = "all";
  ShardFlags en_shard;
  bool en_count_only = false;
  auto* en = app.add_subcommand("enumerate", "Stream one canonical table per class");
  en->add_option("--n", en_n, "State count")->required();
  en->add_option("--filter", en_filter, "all or sc");
  add_shard_flags(en, en_shard);
  en->add_flag("--count-only", en_count_only, "Print only the number of classes");

  // census
  int ce_n = 0;
  std::string ce_filter = "all";
  ShardFlags ce_shard;
  int ce_workers = default_workers();
  std::string ce_out;
  std::string ce_journal;
  std::optional<int> ce_min_record;
  bool ce_witness = false;
  bool ce_labeled = false;
  auto* ce = app.add_subcommand("census", "Reset-length distribution over all classes");
  ce->add_option("--n", ce_n, "State count")->required();
  ce->add_option("--filter", ce_filter, "all or sc");
  add_shard_flags(ce, ce_shard);
  ce->add_option("--workers", ce_workers, "Worker threads")->check(CLI::PositiveNumber);
  ce->add_option("--out", ce_out, "Distribution CSV; sidecar JSON and journal go next to it");
  ce->add_option("--journal", ce_journal, "Checkpoint journal (default: next to --out)");
  ce->add_option("--min-record-length", ce_min_record,
                 "Count shorter reset lengths only in below_threshold")
      ->check(CLI::NonNegativeNumber);
  ce->add_flag("--witness", ce_witness, "Store a shortest reset word for recorded members");
  ce->add_flag("--labeled", ce_labeled, "Count labeled automata instead of classes");

  // solve
  std::string so_file;
  bool so_witness = true;
  auto* so = app.add_subcommand("solve", "Shortest reset word of one table (JSON)");
  so->add_option("table", so_file, "Table JSON file; stdin when omitted or '-'");
  so->add_flag("--witness,!--no-witness", so_witness, "Report a shortest reset word");

  // family
  std::string fa_name;
  int fa_n = 0;
  int fa_s = 1;
  auto* fa = app.add_subcommand("family", "Build a slowly synchronizing automaton and check it");
  fa->add_option("--name", fa_name,
                 "cerny, w-prime, b-dot, w-double-prime or w-dot-double-prime")
      ->required();
  fa->add_option("--n", fa_n, "State count")->required();
  fa->add_option("--s", fa_s, "Chord length for cerny");

  // verify-cerny
  int vc_n = 0;
  std::string vc_filter = "all";
  int vc_workers = default_workers();
  auto* vc = app.add_subcommand("verify-cerny", "Check the (n-1)^2 bound over all classes");
  vc->add_option("--n", vc_n, "State count")->required();
  vc->add_option("--filter", vc_filter, "all or sc");
  vc->add_option("--workers", vc_workers, "Worker threads")->check(CLI::PositiveNumber);

  // gaps
  std::string ga_file;
  std::optional<int> ga_n;
  std::optional<int> ga_floor;
  auto* ga = app.add_subcommand("gaps", "Gaps and island of a distribution CSV");
  ga->add_option("csv", ga_file, "Distribution CSV (length,count)")->required();
  ga->add_option("--n", ga_n, "State count, enables the island report");
  ga->add_option("--floor", ga_floor, "Ignore lengths below this");

  // merge
  std::vector<std::string> me_journals;
  std::string me_out;
  auto* me = app.add_subcommand("merge", "Combine shard journals into one distribution");
  me->add_option("journals", me_journals, "Journal files")->required();
  me->add_option("--out", me_out, "Distribution CSV; sidecar JSON goes next to it");

  std::vector<const char*> argv;
  argv.push_back("synccensus");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
        err << "run 'synccensus " << sub->get_name() << " --help' for usage\n";
      } else {
        err << "run 'synccensus --help' for usage\n";
      }
      return kExitUsage;
    }

    if (*en) {
      check_n(en_n);
      const ShardSpec shard = make_shard(en_shard, en_n);
      const ClassFilter filter = filter_flag(en_filter);
      Visitor visit;
      if (!en_count_only) {
        visit = [&](const TransitionTable& t) { out << table_to_json(t).dump() << '\n'; };
      }
      const auto count = enumerate(en_n, filter, shard, visit);
      if (en_count_only) out << count << '\n';
      return kExitOk;
    }

    if (*ce) {
      check_n(ce_n);
      CensusJob job;
      job.n = ce_n;
      job.filter = filter_flag(ce_filter);
      job.shard = make_shard(ce_shard, ce_n);
      job.workers = ce_workers;
      job.options.min_record_length = ce_min_record;
      job.options.witness = ce_witness;
      job.options.labeled = ce_labeled;
      std::optional<fs::path> out_path;
      if (!ce_out.empty()) {
        out_path = fs::path(ce_out);
        check_writable(*out_path);
        check_writable(sidecar_path(*out_path));
      }
      if (!ce_journal.empty()) {
        job.journal = fs::path(ce_journal);
      } else if (out_path) {
        job.journal = journal_path(*out_path);
      }
      if (job.journal) check_writable(*job.journal);
      const CensusOutcome result = run_census_job(job);
      if (result.resumed > 0) {
        err << "resumed " << result.resumed << " of " << result.records.size()
            << " work units from " << job.journal->string() << '\n';
      }
      write_census_outputs(result.histogram, result.records, out_path, out);
      return kExitOk;
    }

    if (*so) {
      std::string text;
      if (so_file.empty() || so_file == "-") {
        text = read_all(in);
      } else {
        std::ifstream file(so_file);
        if (!file) throw UsageError("cannot read " + so_file);
        text = read_all(file);
      }
      TransitionTable t = [&] {
        try {
          return parse_table(text);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      out << reset_result_to_json(shortest_reset_length(t, so_witness)).dump() << '\n';
      return kExitOk;
    }

    if (*fa) {
      FamilySpec spec;
      try {
        spec.family = parse_family(fa_name);
        spec.n = fa_n;
        spec.s = fa_s;
        validate(spec);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const FamilyReport r = verify_family(spec);
      json j{{"name", to_string(spec.family)},
             {"n", spec.n},
             {"table", table_to_json(r.table)},
             {"expected", r.expected ? json(*r.expected) : json(nullptr)},
             {"measured", r.measured.length ? json(*r.measured.length) : json(nullptr)},
             {"verdict", r.match ? "MATCH" : "MISMATCH"}};
      if (spec.family == Family::kCernyS) j["s"] = spec.s;
      out << j.dump() << '\n';
      return r.match ? kExitOk : kExitFailure;
    }

    if (*vc) {
      check_n(vc_n);
      const CernyReport r = verify_cerny(vc_n, filter_flag(vc_filter), vc_workers);
      json j{{"n", r.n},
             {"filter", to_string(r.filter)},
             {"bound", r.bound},
             {"max_length", r.max_length ? json(*r.max_length) : json(nullptr)},
             {"argmax", r.argmax ? table_to_json(r.argmax->table) : json(nullptr)},
             {"visited", count_to_json(r.visited)},
             {"violations", count_to_json(r.violations)},
             {"passed", r.passed()}};
      out << j.dump() << '\n';
      return r.passed() ? kExitOk : kExitCernyViolation;
    }

    if (*ga) {
      std::ifstream file(ga_file);
      if (!file) throw UsageError("cannot read " + ga_file);
      Distribution dist;
      try {
        dist = read_distribution_csv(file);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const GapReport g = ga_floor ? find_gaps(dist, *ga_floor) : find_gaps(dist);
      json gaps = json::array();
      for (const auto& gap : g.gaps) gaps.push_back(json::array({gap.lo, gap.hi}));
      json j{{"max_length", g.max_length ? json(*g.max_length) : json(nullptr)},
             {"floor", g.floor},
             {"gaps", std::move(gaps)}};
      if (ga_n) {
        const IslandReport isl = island_members(dist, {}, *ga_n);
        json counts = json::object();
        for (const auto& [len, c] : isl.counts) counts[std::to_string(len)] = count_to_json(c);
        j["island"] = json{{"range", json::array({isl.lo, isl.hi})}, {"counts", counts}};
      }
      out << j.dump() << '\n';
      return kExitOk;
    }

    if (*me) {
      std::vector<ShardRecord> records;
      for (const auto& path : me_journals) {
        if (!fs::exists(path)) throw UsageError("no such journal " + path);
        for (auto& rec : read_journal(path)) records.push_back(std::move(rec));
      }
      // Enumeration order is lexicographic in the prefixes.
      std::stable_sort(records.begin(), records.end(),
                       [](const ShardRecord& x, const ShardRecord& y) { return x.prefix < y.prefix; });
      records.erase(std::unique(records.begin(), records.end(),
                                [](const ShardRecord& x, const ShardRecord& y) {
                                  return x.prefix == y.prefix;
                                }),
                    records.end());
      std::optional<Histogram> merged;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0) {
          const auto& a = records[i - 1].prefix;
          const auto& b = records[i].prefix;
          if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) {
            throw UsageError("journals contain overlapping shards");
          }
        }
        if (merged) {
          merged->merge(records[i].histogram);
        } else {
          merged = records[i].histogram;
        }
      }
      if (!merged) throw UsageError("journals contain no records");
      std::optional<fs::path> out_path;
      if (!me_out.empty()) {
        out_path = fs::path(me_out);
        check_writable(*out_path);
      }
      write_census_outputs(*merged, records, out_path, out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace synccensus::cli
