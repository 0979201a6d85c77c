#pragma once

#include "args.hpp"

namespace irlssvm_cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitSolver = 4;
inline constexpr int kExitInvariant = 5;

int exit_code_for(irlssvm_status status);

/// Runs a parsed command, writing its artifacts. Returns the exit code.
int execute(const Command& cmd);

}  // namespace irlssvm_cli
