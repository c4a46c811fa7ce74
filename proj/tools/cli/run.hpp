#pragma once

#include <ostream>

namespace dcstring::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kGateFailure = 4,
};

/// Entry point of the command-line tool: `dcstring <subcommand> --config <path> [--out <path>] ...`.
/// CSV goes to `out` unless --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcstring::cli
