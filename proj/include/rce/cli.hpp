#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rce::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kData = 3,
};

/// Runs the command line `args` (without the program name) and returns the exit code.
/// Subcommands: apply, stats, ensemble-verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rce::cli
