#pragma once

#include <ostream>
#include <span>
#include <string>

namespace fluidaoi::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsageError = 2,
  kUnstable = 3,
  kNumericalFailure = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. CSV goes to `out` unless --out names a file.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fluidaoi::cli
