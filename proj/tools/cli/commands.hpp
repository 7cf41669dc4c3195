#pragma once

#include <ostream>
#include <span>
#include <string>

#include "collatz_cover/report.hpp"

namespace collatz_cover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // failed check or I/O error
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDeferred = 3;

int exit_code_for(Outcome outcome);

/// Runs one invocation. args excludes the program name. Data goes to out
/// (or to --output), logs and timings to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace collatz_cover::cli
