#pragma once

#include <string>
#include <vector>

namespace memetrace::cli {

// Stable exit codes shared by all subcommands.
enum ExitStatus : int {
    kOk = 0,
    kUsageError = 1,
    kInputError = 2,
    kInternalError = 3,
};

// Dispatches argv (without the program name) to the simulate / extract /
// graph / features / train / detect subcommands. Diagnostics go to stderr,
// data only to the paths named in flags (or stdout).
int run(const std::vector<std::string>& argv);

} // namespace memetrace::cli
