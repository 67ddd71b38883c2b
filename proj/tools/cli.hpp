#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flintlab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecision = 2,
  kCheckpoint = 3,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out`; failures print a one-line JSON error object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flintlab::cli
