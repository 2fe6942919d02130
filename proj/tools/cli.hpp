#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dla/error.hpp"

namespace dla::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,      // a verdict failed, or an unexpected error
  kExitMalformed = 2,    // unreadable input, bad flags, empty generator list
  kExitRejected = 3,     // validation / hypothesis rejection (dependent, sign-ambiguous, ...)
  kExitCapped = 4,       // closure cap reached; a partial report was written
};

int exit_code_for(ErrorCode code);

/// Runs one command. `args` excludes the program name. JSON goes to `out`
/// (or to --out), diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dla::cli
