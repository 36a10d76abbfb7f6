#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homog::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 2;
inline constexpr int kSolverError = 3;

/// Runs the command line `args` (without the program name). Summaries go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homog::cli
