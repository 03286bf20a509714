// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            criteria 1, 3-8
//   acceptance --long     criterion 2 only (n = 7 over all automata)
//   acceptance 4 6        selected criteria

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "synccensus/canonical.hpp"
#include "synccensus/census.hpp"
#include "synccensus/enumerator.hpp"
#include "synccensus/families.hpp"
#include "synccensus/io.hpp"
#include "synccensus/solver.hpp"

using namespace synccensus;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Histogram census(int n, ClassFilter filter) {
  CensusJob job;
  job.n = n;
  job.filter = filter;
  job.workers = workers();
  return run_census_job(job).histogram;
}

struct ClassCounts {
  int n;
  Count total, sync, sc, sc_sync;
};

constexpr ClassCounts kClassCounts[] = {
    {2, 7, 4, 4, 2},
    {3, 74, 51, 29, 21},
    {4, 1474, 1115, 460, 395},
    {5, 41876, 34265, 10701, 10180},
    {6, 1540696, 1318699, 329794, 322095},
    {7, 68343112, 60477844, 12310961, 12194323},
};

bool class_counts_row(const ClassCounts& row, std::ostringstream& detail) {
  const auto all = census(row.n, ClassFilter::kAll);
  const bool ok = all.total == row.total && all.synchronizing == row.sync &&
                  all.strongly_connected == row.sc && all.sc_sync == row.sc_sync;
  detail << " n=" << row.n << ':' << to_string(all.total) << '/' << to_string(all.synchronizing)
         << '/' << to_string(all.strongly_connected) << '/' << to_string(all.sc_sync);
  return ok;
}

Outcome criterion1() {
  std::ostringstream d;
  bool ok = true;
  for (int i = 0; i < 5; ++i) ok = class_counts_row(kClassCounts[i], d) && ok;
  return {ok, "total/sync/sc/sc_sync" + d.str()};
}

Outcome criterion2() {
  const auto& row = kClassCounts[5];
  const auto all = census(7, ClassFilter::kAll);
  const auto sc = census(7, ClassFilter::kStronglyConnected);
  std::ostringstream d;
  d << "n=7 total " << to_string(all.total) << " (want 68343112), sync "
    << to_string(all.synchronizing) << ", sc " << to_string(all.strongly_connected)
    << " (want 12310961), sc_sync " << to_string(all.sc_sync) << "; sc-filter run total "
    << to_string(sc.total) << ", sync " << to_string(sc.synchronizing);
  const bool ok = all.total == row.total && all.synchronizing == row.sync &&
                  all.strongly_connected == row.sc && all.sc_sync == row.sc_sync &&
                  sc.total == row.sc && sc.synchronizing == row.sc_sync;
  return {ok, d.str()};
}

Outcome criterion3() {
  std::ostringstream d;
  bool ok = true;
  ResetSolver solver;
  for (int n = 1; n <= 4; ++n) {
    std::set<oracle::Flat> expected;
    oracle::for_each_labeled(n, 2, [&](const oracle::Flat& e) {
      expected.insert(oracle::brute_canonical(n, 2, e));
    });
    std::set<oracle::Flat> got;
    std::size_t visits = 0;
    std::size_t length_mismatch = 0;
    enumerate(n, ClassFilter::kAll, [&](const TransitionTable& t) {
      ++visits;
      const auto f = oracle::flat(t);
      got.insert(f);
      if (solver.solve(t).length != oracle::naive_reset_length(n, 2, f)) ++length_mismatch;
    });
    const bool row = got == expected && visits == got.size() && length_mismatch == 0;
    ok = ok && row;
    d << " n=" << n << ": " << got.size() << '/' << expected.size() << " classes, "
      << length_mismatch << " length mismatches;";
  }
  return {ok, "enumerator vs brute-force dedup, BFS vs list BFS:" + d.str()};
}

Outcome criterion4() {
  std::ostringstream d;
  bool ok = true;
  int checked = 0;
  const Family families[] = {Family::kCernyS, Family::kWPrime, Family::kBDot,
                             Family::kWDoublePrime, Family::kWDotDoublePrime};
  for (int n = 4; n <= 13; ++n) {
    for (Family f : families) {
      for (int s = 1; s <= (f == Family::kCernyS ? 3 : 1); ++s) {
        const FamilySpec spec{f, n, s};
        try {
          validate(spec);
        } catch (const std::invalid_argument&) {
          continue;
        }
        const auto r = verify_family(spec);
        ++checked;
        if (!r.match) {
          ok = false;
          d << " MISMATCH " << to_string(f) << " n=" << n << " s=" << s;
        }
      }
    }
  }
  // Reference lengths at n = 11.
  const std::pair<FamilySpec, int> points[] = {
      {{Family::kCernyS, 11, 1}, 100}, {{Family::kCernyS, 11, 2}, 91},
      {{Family::kWPrime, 11, 1}, 90},  {{Family::kBDot, 11, 1}, 84},
      {{Family::kWDoublePrime, 11, 1}, 83}, {{Family::kWDotDoublePrime, 11, 1}, 83},
      {{Family::kCernyS, 11, 3}, 82}};
  for (const auto& [spec, len] : points) {
    if (verify_family(spec).measured.length != len) {
      ok = false;
      d << " n=11 " << to_string(spec.family) << " s=" << spec.s << " != " << len;
    }
  }
  // gcd(9, 3) = 3: C^3_9 does not synchronize; the closed form says so too.
  const auto c39 = verify_family({Family::kCernyS, 9, 3});
  ok = ok && c39.match && !c39.measured.synchronizing();
  d << " " << checked << " members checked; n=11 lengths 100/91/90/84/83/83/82; C^3_9 "
    << (c39.measured.synchronizing() ? "synchronizing" : "not synchronizing");
  return {ok, d.str()};
}

Outcome criterion5() {
  std::ostringstream d;
  bool ok = true;
  auto check = [&](int n, ClassFilter filter) {
    const auto r = verify_cerny(n, filter, workers());
    const bool row = r.passed() && r.max_length == (n - 1) * (n - 1);
    ok = ok && row;
    d << ' ' << to_string(filter) << " n=" << n << " max=" << r.max_length.value_or(-1)
      << (row ? "" : " FAIL") << ';';
  };
  for (int n = 1; n <= 6; ++n) check(n, ClassFilter::kAll);
  check(7, ClassFilter::kStronglyConnected);
  return {ok, "max observed = (n-1)^2, no violations:" + d.str()};
}

Distribution fixture(const std::string& name) {
  std::ifstream in(std::string(SYNCCENSUS_FIXTURES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return read_distribution_csv(in);
}

std::string gaps_text(const GapReport& r) {
  std::ostringstream s;
  for (const auto& g : r.gaps) s << '[' << g.lo << ',' << g.hi << ']';
  s << " max " << r.max_length.value_or(-1);
  return s.str();
}

Outcome criterion6() {
  const auto n10 = fixture("tail_n10_sc.csv");
  const auto n10_all = fixture("tail_n10_all.csv");
  const auto n11 = fixture("tail_n11_sc.csv");
  const auto g10 = find_gaps(n10, n10.begin()->first);
  const auto g10_all = find_gaps(n10_all, n10_all.begin()->first);
  const auto g11 = find_gaps(n11, n11.begin()->first);
  const bool ok10 = g10.gaps == std::vector<Gap>{{75, 80}, {67, 71}} && g10.max_length == 81 &&
                    g10_all.gaps == g10.gaps;
  const bool ok11 = g11.gaps == std::vector<Gap>{{93, 99}, {85, 89}, {78, 79}} &&
                    g11.max_length == 100;
  const auto i10 = island_members(n10, {}, 10);
  const auto i11 = island_members(n11, {}, 11);
  const bool islands = i10.counts == Distribution{{72, 2}, {73, 1}, {74, 1}} &&
                       i11.counts == Distribution{{90, 3}, {91, 2}, {92, 1}};
  return {ok10 && ok11 && islands,
          "n=10 " + gaps_text(g10) + "; n=11 " + gaps_text(g11) +
              "; islands 72..74 = 2/1/1, 90..92 = 3/2/1" + (islands ? "" : " FAIL")};
}

Outcome criterion7() {
  std::ostringstream d;
  bool ok = true;
  for (int n = 1; n <= 4; ++n) {
    const auto h = labeled_counts(n, workers());
    Distribution direct;
    ResetSolver solver;
    oracle::for_each_labeled(n, 2, [&](const oracle::Flat& e) {
      if (const auto len = solver.solve(oracle::table(n, 2, e)).length) direct[*len] += 1;
    });
    const Count want = oracle::ipow(static_cast<std::uint64_t>(n), 2 * n);
    const bool row = h.total == want && h.counts == direct;
    ok = ok && row;
    d << " n=" << n << " total " << to_string(h.total) << (row ? "" : " FAIL") << ';';
  }
  return {ok, "sum of n!*2/|Aut| = n^(2n), labeled histogram = direct enumeration:" + d.str()};
}

Outcome criterion8() {
  // The full n = 10 and n = 11 runs are out of reach here; what is checked
  // is that the sharded pipeline reproduces the unsharded one exactly.
  bool ok = true;
  std::ostringstream d;
  for (int n = 2; n <= 5; ++n) {
    for (auto filter : {ClassFilter::kAll, ClassFilter::kStronglyConnected}) {
      const auto whole = histogram_to_json(run_census(n, filter)).dump();
      for (int depth : {3, 6}) {
        const auto shards = shard_space(n, std::min(depth, 2 * n), filter);
        Histogram merged = run_census(n, filter, shards[0]);
        for (std::size_t i = 1; i < shards.size(); ++i) merged.merge(run_census(n, filter, shards[i]));
        if (histogram_to_json(merged).dump() != whole) {
          ok = false;
          d << " n=" << n << ' ' << to_string(filter) << " depth " << depth << " differs;";
        }
      }
    }
  }
  return {ok, "substitute for the n=10/n=11 runs (not attempted): shard merge = unsharded "
              "histogram for n=2..5, both filters, depths 3 and 6;" + d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"class counts, n = 2..6", criterion1},
      {"class counts, n = 7 (long)", criterion2},
      {"brute-force oracle equivalence, n <= 4", criterion3},
      {"family reset-length formulas", criterion4},
      {"Cerny bound: all n <= 6, strongly connected n = 7", criterion5},
      {"gaps and islands on the n = 10, 11 tail fixtures", criterion6},
      {"labeled-model consistency, n <= 4", criterion7},
      {"desk-scale substitute: shard additivity", criterion8},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--long") {
      selected.insert(2);
    } else {
      selected.insert(std::atoi(arg.c_str()));
    }
  }
  if (selected.empty()) selected = {1, 3, 4, 5, 6, 7, 8};

  int failed = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    const auto& [name, fn] = criteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  #" << id << "  " << name << "  -- "
              << o.detail << "  (" << std::fixed << std::setprecision(1) << secs << " s)"
              << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
