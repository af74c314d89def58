#pragma once

#include <iosfwd>

namespace lpbdd {

/// Exit codes of bddtool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifiedNo = 1,
  kExitUsage = 2,
  kExitConstraint = 3,
};

/// Entry point of bddtool with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpbdd
