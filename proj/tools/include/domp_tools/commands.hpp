#pragma once

#include <iosfwd>

namespace domp::tools {

enum ExitCode : int { kOk = 0, kUsage = 1, kMismatch = 2, kInternal = 3 };

/// Entry point of the `domp` command line: generate, solve, verify, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace domp::tools
