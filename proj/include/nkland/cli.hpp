#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nkland::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitRuntimeFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the `nkland` tool. `args` excludes the program name.
/// Subcommands: simulate, census, walk. Returns 0 on success, 2 on usage or
/// parameter errors, 1 on I/O and other runtime failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nkland::cli
