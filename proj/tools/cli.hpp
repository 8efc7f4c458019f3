#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wtopo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs `wtopo` with `args` (args[0] is the program name). Results that are not written
/// to a file go to `out`; diagnostics and the effective seed go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wtopo::cli
