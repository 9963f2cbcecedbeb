#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace portree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/**
 * @brief Runs one command line.
 *
 * Subcommands: exact-pmf, exact-moments, zagreb-moments, oracle, simulate,
 * poisson, normality-report, verify, replay. Returns 0 on success, 1 on a
 * usage or runtime error, 2 when `verify` finds a failing check.
 */
int dispatch(int argc, char** argv);

/// Same, with args[0] the program name and explicit output streams.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace portree::cli
