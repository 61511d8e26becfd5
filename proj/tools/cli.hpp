#pragma once

#include <iosfwd>

namespace elastica::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand. Diagnostics go to `err`; results go
/// to --out or stdout.
int run(int argc, const char* const* argv, std::ostream& err);

}  // namespace elastica::cli
