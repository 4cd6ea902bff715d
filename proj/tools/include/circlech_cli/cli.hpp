#pragma once

#include <ostream>

namespace circlech::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,     ///< validation failure or tolerance exceeded
  kBadInput = 2,   ///< malformed JSON or schema mismatch
  kSolver = 3,     ///< ODE or series solver failure
};

/// Runs the command line `argv` and returns the exit code. All output goes
/// to `out`/`err`, never to the process streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circlech::cli
