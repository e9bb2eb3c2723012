#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etf::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitBudget = 3;

/// Runs one etf-forge command. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`; `-` file arguments read from `in`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             std::istream& in);

}  // namespace etf::cli
