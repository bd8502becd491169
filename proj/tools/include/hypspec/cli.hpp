#pragma once

#include <iosfwd>

namespace hypspec {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;     // validation, parse and domain errors
inline constexpr int kExitResource = 3;  // mesh size cap
inline constexpr int kExitSolver = 4;    // eigensolver or mesh quality failure

/// Runs one command. Results go to `out` unless --out names a file;
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypspec
