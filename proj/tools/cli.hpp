#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppbench {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kSolverError = 1, kUsageError = 2 };

/// Runs one ppbench invocation. `args` excludes the program name. The
/// summary line goes to `out`, diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Appends `--key=value` for every entry of the `--config` file whose key
/// is not already given on the command line. Keys containing '.' are
/// informational (manifest bookkeeping) and skipped. Throws
/// proxproj::ConfigError when the file is missing or malformed.
std::vector<std::string> expand_config(std::vector<std::string> args);

}  // namespace ppbench
