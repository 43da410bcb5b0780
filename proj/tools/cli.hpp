#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sudiag::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
inline constexpr int kNoConvergence = 4;

/// Runs one command line (args excludes the program name). Verdicts and
/// summaries go to `out`, diagnostics and timings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sudiag::cli
