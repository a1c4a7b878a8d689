#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace numcli {

/// Exit codes: 0 success, 1 usage or input error, 2 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one invocation. `args` excludes the program name. Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace numcli
