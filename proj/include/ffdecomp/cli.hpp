#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffd::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInvalidInput = 2,
    kLimit = 3,
};

/// Runs one subcommand. args excludes the program name. Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ffd::cli
