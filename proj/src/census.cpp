#include "synccensus/census.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "synccensus/canonical.hpp"
#include "synccensus/io.hpp"
#include "synccensus/solver.hpp"

namespace synccensus {

std::string to_string(Count c) {
  if (c == 0) return "0";
  std::string out;
  while (c != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  return {out.rbegin(), out.rend()};
}

Count parse_count(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty count");
  constexpr Count kMax = ~Count{0};
  Count value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument("count is not a decimal number: " + std::string(text));
    }
    const auto digit = static_cast<unsigned>(ch - '0');
    if (value > (kMax - digit) / 10) throw std::invalid_argument("count overflows");
    value = value * 10 + digit;
  }
  return value;
}

namespace {

bool member_less(const Member& x, const Member& y) {
  if (x.length != y.length) return x.length < y.length;
  const auto ex = x.table.entries();
  const auto ey = y.table.entries();
  return std::lexicographical_compare(ex.begin(), ex.end(), ey.begin(), ey.end());
}

void add_into(Distribution& into, const Distribution& from) {
  for (const auto& [len, c] : from) into[len] += c;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Per-worker accumulator. Lengths are tallied in flat vectors and folded
// into the histogram maps once per work unit.
class Tally {
 public:
  Tally(int n, ClassFilter filter, const CensusOptions& options)
      : options_(options),
        threshold_(options.member_threshold.value_or(default_member_threshold(n))),
        group_order_(factorial(n) * 2) {
    hist_.n = n;
    hist_.filter = filter;
    hist_.labeled = options.labeled;
    hist_.min_record_length = options.min_record_length;
  }

  void add(const TransitionTable& t) {
    const Count w = options_.labeled ? group_order_ / automorphism_order(t) : 1;
    hist_.total += w;
    const bool sc = is_strongly_connected(t);
    if (sc) hist_.strongly_connected += w;
    if (!is_synchronizing(t)) return;
    hist_.synchronizing += w;
    if (sc) hist_.sc_sync += w;
    if (is_irreducible(t)) hist_.irreducible += w;

    ResetResult r = solver_.solve(t, false);
    const int len = *r.length;
    if (!hist_.longest || len > hist_.longest->length) {
      hist_.longest = Member{len, sc, t, std::nullopt};
    }
    if (options_.min_record_length && len < *options_.min_record_length) {
      hist_.below_threshold += w;
    } else {
      bump(all_, len, w);
      if (sc) bump(sc_, len, w);
    }
    if (len >= threshold_) {
      Member m{len, sc, t, std::nullopt};
      if (options_.witness) m.witness = solver_.solve(t, true).witness;
      hist_.members.push_back(std::move(m));
    }
  }

  Histogram take() {
    fold(all_, hist_.counts);
    fold(sc_, hist_.sc_counts);
    std::sort(hist_.members.begin(), hist_.members.end(), member_less);
    Histogram out = std::move(hist_);
    hist_ = Histogram{};
    hist_.n = out.n;
    hist_.filter = out.filter;
    hist_.labeled = out.labeled;
    hist_.min_record_length = out.min_record_length;
    return out;
  }

 private:
  static void bump(std::vector<Count>& v, int len, Count w) {
    if (static_cast<std::size_t>(len) >= v.size()) v.resize(len + 1, 0);
    v[len] += w;
  }

  static void fold(std::vector<Count>& v, Distribution& into) {
    for (std::size_t len = 0; len < v.size(); ++len) {
      if (v[len] != 0) into[static_cast<int>(len)] += v[len];
    }
    v.clear();
  }

  CensusOptions options_;
  int threshold_;
  std::uint64_t group_order_;
  Histogram hist_;
  ResetSolver solver_;
  std::vector<Count> all_;
  std::vector<Count> sc_;
};

// Work units are the generation-tree nodes three rows deep below each shard
// prefix. The depth does not depend on the worker count, so a journal can be
// resumed with a different --workers.
constexpr int kUnitRows = 3;

std::vector<std::vector<State>> work_units(int n, ClassFilter filter,
                                           const ShardSpec& shard) {
  std::vector<std::vector<State>> units;
  for (const auto& part : expand_shard(n, filter, shard)) {
    const int depth = std::min(n * kCensusLetters,
                               std::max<int>(static_cast<int>(part.prefix.size()),
                                             kUnitRows * kCensusLetters));
    for (auto& s : shard_space(n, depth, filter, part.prefix)) {
      units.push_back(std::move(s.prefix));
    }
  }
  return units;
}

void check_compatible(const Histogram& h, int n, ClassFilter filter,
                      const CensusOptions& options) {
  if (h.n != n || h.filter != filter || h.labeled != options.labeled ||
      h.min_record_length != options.min_record_length) {
    throw std::invalid_argument(
        "journal records belong to a different census configuration");
  }
}

}  // namespace

int default_member_threshold(int n) { return n * n - 3 * n + 2; }

void Histogram::merge(const Histogram& other) {
  if (n != other.n || filter != other.filter || labeled != other.labeled ||
      min_record_length != other.min_record_length) {
    throw std::invalid_argument("cannot merge histograms of different censuses");
  }
  add_into(counts, other.counts);
  add_into(sc_counts, other.sc_counts);
  total += other.total;
  synchronizing += other.synchronizing;
  strongly_connected += other.strongly_connected;
  sc_sync += other.sc_sync;
  irreducible += other.irreducible;
  below_threshold += other.below_threshold;
  std::vector<Member> merged;
  merged.reserve(members.size() + other.members.size());
  std::merge(members.begin(), members.end(), other.members.begin(),
             other.members.end(), std::back_inserter(merged), member_less);
  members = std::move(merged);
  if (other.longest && (!longest || other.longest->length > longest->length)) {
    longest = other.longest;
  }
}

std::optional<int> Histogram::max_length() const {
  if (longest) return longest->length;
  if (counts.empty()) return std::nullopt;
  return counts.rbegin()->first;
}

Histogram run_census(int n, ClassFilter filter, const ShardSpec& shard,
                     const CensusOptions& options) {
  Tally tally(n, filter, options);
  enumerate(n, filter, shard, [&](const TransitionTable& t) { tally.add(t); });
  return tally.take();
}

CensusOutcome run_census_job(const CensusJob& job) {
  const auto units = work_units(job.n, job.filter, job.shard);

  std::vector<std::optional<ShardRecord>> results(units.size());
  CensusOutcome outcome;
  if (job.journal) {
    auto stored = read_journal(*job.journal);
    repair_journal(*job.journal);
    for (auto& rec : stored) {
      check_compatible(rec.histogram, job.n, job.filter, job.options);
      const auto it = std::find(units.begin(), units.end(), rec.prefix);
      if (it == units.end()) continue;
      auto& slot = results[static_cast<std::size_t>(it - units.begin())];
      if (!slot) {
        slot = std::move(rec);
        ++outcome.resumed;
      }
    }
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!results[i]) pending.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  std::mutex journal_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      Tally tally(job.n, job.filter, job.options);
      for (std::size_t at = next++; at < pending.size(); at = next++) {
        const std::size_t unit = pending[at];
        ShardRecord rec;
        rec.prefix = units[unit];
        rec.visited = enumerate(job.n, job.filter, ShardSpec{units[unit], 1, 0},
                                [&](const TransitionTable& t) { tally.add(t); });
        rec.histogram = tally.take();
        if (job.journal) {
          std::lock_guard lock(journal_mutex);
          append_journal(*job.journal, rec);
        }
        results[unit] = std::move(rec);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = pending.size();
    }
  };

  const int workers = std::max(1, std::min<int>(job.workers, static_cast<int>(pending.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Histogram merged = Tally(job.n, job.filter, job.options).take();
  for (auto& slot : results) {
    merged.merge(slot->histogram);
    outcome.records.push_back(std::move(*slot));
  }
  outcome.histogram = std::move(merged);
  return outcome;
}

GapReport find_gaps(const Distribution& dist, int floor) {
  GapReport report;
  report.floor = floor;
  for (auto it = dist.rbegin(); it != dist.rend(); ++it) {
    if (it->second != 0) {
      report.max_length = it->first;
      break;
    }
  }
  if (!report.max_length) return report;
  std::optional<int> open;
  for (int len = floor; len < *report.max_length; ++len) {
    const auto it = dist.find(len);
    const bool empty = it == dist.end() || it->second == 0;
    if (empty && !open) open = len;
    if (!empty && open) {
      report.gaps.push_back(Gap{*open, len - 1});
      open.reset();
    }
  }
  if (open) report.gaps.push_back(Gap{*open, *report.max_length - 1});
  // Largest lengths first, matching how tails are read.
  std::reverse(report.gaps.begin(), report.gaps.end());
  return report;
}

GapReport find_gaps(const Distribution& dist) {
  int floor = 0;
  for (const auto& [len, c] : dist) {
    if (c != 0) {
      floor = len;
      break;
    }
  }
  return find_gaps(dist, floor);
}

IslandReport island_members(const Distribution& dist,
                            const std::vector<Member>& members, int n) {
  IslandReport report;
  report.lo = n * n - 3 * n + 2;
  report.hi = n * n - 3 * n + 4;
  for (const auto& [len, c] : dist) {
    if (len >= report.lo && len <= report.hi && c != 0) report.counts[len] = c;
  }
  for (const auto& m : members) {
    if (m.length >= report.lo && m.length <= report.hi) report.members.push_back(m);
  }
  return report;
}

IslandReport island_members(const Histogram& h) {
  return island_members(h.counts, h.members, h.n);
}

Histogram labeled_counts(int n, int workers) {
  CensusJob job;
  job.n = n;
  job.filter = ClassFilter::kAll;
  job.options.labeled = true;
  job.workers = workers;
  return run_census_job(job).histogram;
}

CernyReport verify_cerny(int n, ClassFilter filter, int workers) {
  CensusJob job;
  job.n = n;
  job.filter = filter;
  job.workers = workers;
  // Only the argmax is needed; keep member recording above the bound.
  job.options.member_threshold = (n - 1) * (n - 1) + 1;
  const Histogram h = run_census_job(job).histogram;

  CernyReport report;
  report.n = n;
  report.filter = filter;
  report.bound = (n - 1) * (n - 1);
  report.visited = h.total;
  report.max_length = h.max_length();
  report.argmax = h.longest;
  for (const auto& [len, c] : h.counts) {
    if (len > report.bound) report.violations += c;
  }
  return report;
}

}  // namespace synccensus
