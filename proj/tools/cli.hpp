#pragma once

#include <iosfwd>

namespace fosc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 2,
  kToleranceFailure = 3,
};

/// Parses the command line, runs one command and writes its artifact.
///
/// With --output PATH the data goes to PATH and the self-check sidecar to
/// PATH.meta.json. Without it the data goes to `out` and the sidecar to `err`.
/// Diagnostics always go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fosc::cli
