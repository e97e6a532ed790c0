#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hvalab::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

/// Environment variable holding the default configuration budget.
inline constexpr const char* kBudgetEnv = "HVALAB_BUDGET";

/// Runs one command. `args` excludes the program name. Records go to `out`
/// one JSON object per line; errors also go to `out` as records, with a
/// human-readable line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hvalab::cli
