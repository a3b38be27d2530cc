#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iwasawa {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one subcommand. `args` excludes the program name.
///
/// With --out the primary JSON or CSV goes to that file and the human-readable
/// summary to `out`. Without --out the primary output goes to `out` and the
/// summary to `err`, so the primary stream stays machine-readable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iwasawa
