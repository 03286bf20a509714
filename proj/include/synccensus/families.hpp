#pragma once

#include <optional>
#include <string>

#include "synccensus/automaton.hpp"
#include "synccensus/solver.hpp"

namespace synccensus {

// Slowly synchronizing two-letter families. In every family letter a is a
// cycle through the states (for the W-type families the cycle skips state 0
// after the last state), and letter b fixes most states.
enum class Family {
  kCernyS,            // C^s_n, chord of length s on b; s = 1 is Cerny's C_n
  kWPrime,            // W'_n
  kBDot,              // B-dot_n
  kWDoublePrime,      // W''_n
  kWDotDoublePrime,   // W-dot''_n
};

struct FamilySpec {
  Family family = Family::kCernyS;
  int n = 0;
  int s = 1;  // used by kCernyS only
};

std::string to_string(Family f);
// Accepts cerny, w-prime, b-dot, w-double-prime, w-dot-double-prime.
Family parse_family(const std::string& name);

// Throws std::invalid_argument if (family, n, s) is not a valid member.
void validate(const FamilySpec& spec);

TransitionTable build_family(const FamilySpec& spec);

// Closed-form reset length, or empty when the member does not synchronize.
std::optional<int> expected_length(const FamilySpec& spec);

struct FamilyReport {
  TransitionTable table;
  std::optional<int> expected;
  ResetResult measured;
  bool match = false;
};

FamilyReport verify_family(const FamilySpec& spec);

}  // namespace synccensus
