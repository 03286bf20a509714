#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace synccensus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCernyViolation = 3;

// Runs one command line. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace synccensus::cli
