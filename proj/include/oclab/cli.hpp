#pragma once

#include <iosfwd>

namespace oclab::cli {

// Exit codes of the oclab command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Parses argv, runs the subcommand and writes its report. Diagnostics go to
// `err`.
int run(int argc, const char* const* argv, std::ostream& err);

}  // namespace oclab::cli
