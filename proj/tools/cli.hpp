#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helpernet::cli {

enum ExitCode : int { kOk = 0, kBadArguments = 2, kNumericalFailure = 3, kValidationFailed = 4 };

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out / --out-dir is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `figure`.
std::vector<std::string> preset_names();

}  // namespace helpernet::cli
