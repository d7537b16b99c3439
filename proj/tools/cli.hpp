#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cacaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // infeasible instance, failed check
inline constexpr int kExitUsage = 2;    // bad arguments, unreadable input

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cacaug::cli
