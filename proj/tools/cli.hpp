#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cgauto::cli {

enum ExitCode : int {
  kTrue = 0,
  kFalse = 1,
  kValidation = 2,
  kUsage = 3,
};

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgauto::cli
