#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clusterspt::cli {

enum ExitCode : int { kSuccess = 0, kVerifiedFailure = 1, kUsageError = 2 };

/// Parses argv (argv[0] is the program name) and runs one subcommand. Reports go to
/// --out or `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clusterspt::cli
