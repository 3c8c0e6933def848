#pragma once

#include <string>
#include <vector>

namespace gradering {

/// Result of one command invocation. `out` is the stdout payload: the
/// machine-readable document when --json was given, human-readable text
/// otherwise. Diagnostics go to `err`.
struct CommandOutcome {
  int exit_code = 0; // 0 pass/consistent, 1 failed check or witness found,
                     // 2 usage or input error, 3 budget exceeded
  std::string out;
  std::string err;
};

/// Runs one command from argv-style arguments (program name excluded).
/// Never throws; failures map onto the exit-code contract above.
CommandOutcome cli_run(const std::vector<std::string>& args);

} // namespace gradering
