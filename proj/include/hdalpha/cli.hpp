#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdalpha {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumerical = 3 };

/// Runs the `hdalpha` command line. `args` includes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdalpha
