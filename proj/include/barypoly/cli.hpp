#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace barypoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Summaries and
/// traces go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace barypoly::cli
