#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// that tests can drive it in-process.
//
// Exit codes: 0 success, 1 selftest failure, 2 parse or usage error,
// 3 invalid element, 4 violated domain contract.

#include <iosfwd>
#include <string>
#include <vector>

namespace crownlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftest = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidElement = 3;
inline constexpr int kExitDomain = 4;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crownlab::cli
