#pragma once

#include <ostream>

namespace hdiforest::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitOracleFailure = 3,
};

/// Entry point shared by the hdiforest binary and the CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hdiforest::cli
