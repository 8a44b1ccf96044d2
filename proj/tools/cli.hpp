#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace repfree::cli {

// Exit codes shared by every subcommand.
enum ExitStatus : int {
  exit_yes = 0,      // derivable / satisfiable / success
  exit_no = 1,       // not derivable / unsatisfiable / verification failed
  exit_usage = 2,    // bad arguments or malformed input files
  exit_budget = 3,   // search budget exceeded, answer unknown
};

// Runs the command line given as argv-style arguments (without argv[0]).
// All regular output goes to `out`, diagnostics to `err`; the return value
// is the process exit code. Kept separate from main() so tests can call it.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace repfree::cli
