#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellorbit {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitTooLarge = 3,
};

/// Largest supported d: the two-party space d^2 must fit the eigensolver.
inline constexpr int kMaxOutcomes = 16;
inline constexpr int kMaxSettings = 1000;

/// Entry point of the `bellorbit` tool; args excludes the program name.
/// Subcommands: analyze, table, game, verify.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellorbit
