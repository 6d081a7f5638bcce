#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arrowkit::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsageOrInput = 2,
  kHypothesesNotMet = 3,
};

/// Runs one command line. Reports go to `out`, diagnostics and timings to
/// `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Convenience form; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrowkit::cli
