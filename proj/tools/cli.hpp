#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arctn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs the command line (args excludes the program name) and returns the
/// process exit code: 0 on success, 1 on usage errors, 2 when an integral
/// fails to converge or an identity check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arctn::cli
