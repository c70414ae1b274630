#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bdiv {

/// Exit statuses shared by every subcommand.
enum ExitStatus : int { kExitOk = 0, kExitUsage = 2, kExitDegenerate = 3 };

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Entry point of the `bdiv` tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bdiv
