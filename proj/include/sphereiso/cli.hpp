#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphereiso::cli {

// Dispatches one command line (without argv[0]).  Writes line-oriented JSON
// to out and diagnostics to err.  Returns the process exit code:
//   0  ok, 1  obstruction / negative decision, 2  invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphereiso::cli
