#pragma once

#include <string>
#include <vector>

namespace qwalk::cli {

/// Exit codes: 0 success, 1 usage/config error, 2 partial numerical failure,
/// 3 precondition (symmetry/validation) failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPartial = 2;
inline constexpr int kExitPrecondition = 3;

/// Runs one subcommand; args exclude the program name.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace qwalk::cli
