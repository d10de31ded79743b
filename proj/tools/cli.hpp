#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tunclock::cli {

/// Exit codes: 0 processed (rows may carry error statuses), 1 at least one
/// failed `check-eq` line, 2 usage or argument error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBatchFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Table output goes
/// to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tunclock::cli
