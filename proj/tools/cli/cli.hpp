#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chaosmark::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerdictFalse = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Entry point for `chaosmark embed|decode|analyze|tm`. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaosmark::cli
