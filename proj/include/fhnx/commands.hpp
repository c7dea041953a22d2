#pragma once

#include "fhnx/core.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fhnx {

/// Process exit codes, stable for CI.
enum ExitCode : int {
  kExitPass = 0,
  kExitVerificationFailure = 1,
  kExitConfigError = 2,
  kExitDomainError = 3,
};

int exit_code_for(ErrorKind kind);

/// Entry point of the fhnx tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fhnx
