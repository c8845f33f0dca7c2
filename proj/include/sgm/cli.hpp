#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sgm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Runs one CLI invocation; `args` excludes the program name.
/// Returns 0 on success, 1 for usage errors, 2 for runtime failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgm
