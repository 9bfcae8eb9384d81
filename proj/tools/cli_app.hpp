#pragma once

namespace patind::cli {

// Full command-line entry point (subcommands: test, power, efficiency,
// quantiles, spectrum).  Returns the process exit code: 0 on success, 2 on
// input errors, 3 on numerical failures.
int run_cli(int argc, const char* const* argv);

}  // namespace patind::cli
