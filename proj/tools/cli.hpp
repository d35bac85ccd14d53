#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affrig::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,       // rigid / true / done
  kUsage = 2,         // parse, usage or dimension errors; improper or unsupported instances
  kNegative = 3,      // flexible / false / not affinely rigid
  kInconclusive = 4,
  kInconsistent = 5,  // inconsistent data, non-unique Gram matrix, degenerate instance
};

/// Runs the command line `args` (without the program name). Documents named
/// "-" go to stdout; the human summary goes to `out` (or `err` when stdout
/// carries a document), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affrig::cli
