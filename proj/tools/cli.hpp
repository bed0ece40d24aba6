#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfk3::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kComputation = 3 };

/// Runs one invocation; args excludes the program name. Output is deterministic apart from timings.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfk3::cli
