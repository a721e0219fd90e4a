#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsfrp::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kTimeLimit = 2,
  kNoSolution = 3,  // infeasible, no disjoint routing, or oracle refusal
  kUsage = 64,
  kBadInput = 65,
};

/// Runs `lsfrp <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsfrp::cli
