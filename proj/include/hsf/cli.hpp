#pragma once

#include <iosfwd>

namespace hsf {

/// Exit status contract of the command-line tool.
enum ExitStatus : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Entry point behind the `hsf` binary: subcommands analyze, junta, sweep,
/// gaussian and checks. Output goes to `out` (or to --out), diagnostics to
/// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsf
