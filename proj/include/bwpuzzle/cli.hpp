#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bwpuzzle {

enum ExitCode : int {
    kExitOk = 0,
    kExitRejected = 1,  ///< verification failed or a check did not pass
    kExitUsage = 2,
    kExitIo = 3,
    kExitData = 4,      ///< size mismatch, malformed input
    kExitNetwork = 5,
};

/// Entry point behind the `bwpuzzle` executable. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwpuzzle
