#pragma once

#include <iosfwd>

namespace sbk::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // harness identity did not hold
  kInvalid = 2,      // instance or argument validation failure
  kMismatch = 3,     // method cannot process a distribution type
  kIoError = 4,      // unreadable or malformed file
};

/// Runs one command line (argv[0] is the program name) with all output on the
/// given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sbk::cli
