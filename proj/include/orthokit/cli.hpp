#pragma once

#include <iosfwd>

namespace orthokit {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInvalid = 2,
  kExitFails = 3,
};

/// Runs the `orthokit` command line with the given arguments (argv[0] is the
/// program name). Results go to `out`, diagnostics and summaries to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orthokit
