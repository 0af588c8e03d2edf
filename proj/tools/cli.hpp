#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cubewalk::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
};

/// Runs one command line (without the program name). Raw bytes from `rand`
/// go to `out` only under --stdout.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubewalk::cli
