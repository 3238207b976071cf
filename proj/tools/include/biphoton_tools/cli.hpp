#pragma once

#include <iosfwd>

namespace biphoton::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand. Reports go to `out`; failures print a single-line
/// JSON object {"error": ..., "message": ...} to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace biphoton::cli
