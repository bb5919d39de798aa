#pragma once

#include <ostream>

namespace zlab::cli {

enum ExitCode : int { kOk = 0, kClaimFailure = 1, kNumericalFailure = 2, kUsage = 64 };

// Parses argv (argv[0] is the program name) and runs one subcommand:
// classify, verify, sweep, lemma, simulate, gateaux, report.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zlab::cli
