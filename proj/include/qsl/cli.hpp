#pragma once

namespace qsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one subcommand and returns the process exit code:
/// 0 on success, 1 when a verification or invariant check fails, 2 on usage
/// errors and malformed input.
int run(int argc, char** argv);

}  // namespace qsl::cli
