#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbqc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kParseError = 2,
    kResourceError = 3,
    kNoWitness = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace mbqc::cli
