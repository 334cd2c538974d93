#pragma once

#include <iosfwd>

namespace powersieve::cli {

enum ExitCode {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalidArguments = 2,
  kBudgetExceeded = 3,
  kConvergenceFailure = 4,
};

// Parses argv (argv[0] is the program name) and runs one subcommand.
// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace powersieve::cli
