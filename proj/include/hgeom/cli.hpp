#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgeom {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,        // success or affirmative result
  kExitNegative = 1,  // invalid certificate, no representation found
  kExitUsage = 2,     // bad arguments or malformed input
  kExitBudget = 3,    // derivation or search budget exhausted
};

/// Runs the `hgeom` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgeom
