#ifndef QWALK_CLI_APP_HPP
#define QWALK_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qwalk::cli {

enum ExitCode : int { kExitOk = 0, kExitParameterError = 2, kExitInvariantViolation = 3 };

// Runs the command line `args` (program name excluded). Output that is not
// redirected with --out goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli

#endif  // QWALK_CLI_APP_HPP
