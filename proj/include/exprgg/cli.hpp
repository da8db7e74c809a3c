#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exprgg {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitMismatch = 3,
};

/// Runs the exprgg command line. args[0] is the program name. Normal output
/// goes to `out`; usage errors and progress lines go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exprgg
