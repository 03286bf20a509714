#include "synccensus/families.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace synccensus {

std::string to_string(Family f) {
  switch (f) {
    case Family::kCernyS: return "cerny";
    case Family::kWPrime: return "w-prime";
    case Family::kBDot: return "b-dot";
    case Family::kWDoublePrime: return "w-double-prime";
    case Family::kWDotDoublePrime: return "w-dot-double-prime";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::kCernyS, Family::kWPrime, Family::kBDot,
                   Family::kWDoublePrime, Family::kWDotDoublePrime}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

namespace {

int min_states(Family f) {
  switch (f) {
    case Family::kBDot: return 5;
    case Family::kWDoublePrime:
    case Family::kWDotDoublePrime: return 4;
    default: return 3;
  }
}

}  // namespace

void validate(const FamilySpec& spec) {
  const int n = spec.n;
  if (n < min_states(spec.family) || n > kMaxStates) {
    throw std::invalid_argument(to_string(spec.family) + " needs n in [" +
                                std::to_string(min_states(spec.family)) +
                                ", 16], got " + std::to_string(n));
  }
  if (spec.family == Family::kCernyS && (spec.s < 1 || spec.s >= n)) {
    throw std::invalid_argument("cerny needs 1 <= s < n");
  }
  if (spec.family == Family::kBDot && n % 2 == 0) {
    throw std::invalid_argument("b-dot is defined for odd n only");
  }
}

// States are 0-based here; state q stands for state q + 1 of the usual
// 1-based presentation.
TransitionTable build_family(const FamilySpec& spec) {
  validate(spec);
  const int n = spec.n;
  std::vector<int> a(n);
  std::vector<int> b(n);
  for (int q = 0; q < n; ++q) b[q] = q;

  switch (spec.family) {
    case Family::kCernyS:
    case Family::kBDot:
      for (int q = 0; q < n; ++q) a[q] = (q + 1) % n;
      break;
    default:
      for (int q = 0; q + 1 < n; ++q) a[q] = q + 1;
      a[n - 1] = 1;
      break;
  }

  switch (spec.family) {
    case Family::kCernyS:
      b[0] = spec.s;
      break;
    case Family::kWPrime:
      b[0] = 1;
      b[n - 1] = 0;
      break;
    case Family::kBDot:
      b[0] = 1;
      b[1] = 4;
      for (int q = 2; q <= n - 2; ++q) b[q] = q + 1;
      b[n - 1] = 2;
      break;
    case Family::kWDoublePrime:
      b[0] = n - 2;
      b[n - 2] = 0;
      break;
    case Family::kWDotDoublePrime:
      b[0] = n - 2;
      b[n - 2] = 0;
      b[n - 1] = 1;
      break;
  }

  std::vector<int> rows;
  rows.reserve(2 * n);
  for (int q = 0; q < n; ++q) {
    rows.push_back(a[q]);
    rows.push_back(b[q]);
  }
  return TransitionTable(n, 2, std::span<const int>(rows));
}

std::optional<int> expected_length(const FamilySpec& spec) {
  validate(spec);
  const int n = spec.n;
  switch (spec.family) {
    case Family::kCernyS:
      // The chord only synchronizes when it is coprime to the cycle.
      if (std::gcd(n, spec.s) != 1) return std::nullopt;
      return (n - 1) * (n - 1) - (n - 2) * (spec.s - 1);
    case Family::kWPrime:
      return n * n - 3 * n + 2;
    case Family::kBDot:
      return n * n - 4 * n + 7;
    case Family::kWDoublePrime:
    case Family::kWDotDoublePrime:
      return n * n - 4 * n + 6;
  }
  return std::nullopt;
}

FamilyReport verify_family(const FamilySpec& spec) {
  FamilyReport report{build_family(spec), expected_length(spec), {}, false};
  report.measured = shortest_reset_length(report.table, true);
  report.match = report.measured.length == report.expected;
  return report;
}

}  // namespace synccensus
