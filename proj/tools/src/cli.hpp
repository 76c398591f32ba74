#pragma once
// The curvelab command line, callable in-process for tests.
#include <ostream>
#include <string>
#include <vector>

#include "curvelab/error.hpp"

namespace curvelab::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // selftest found a failing check
  kInputError = 2,
  kUncertain = 3,
  kDegenerate = 4,
};

/// Exit code for an error escaping a subcommand.
int exit_code_for(ErrorCode code);

/// args excludes the program name. Writes the document to out and a
/// one-line diagnostic to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvelab::cli
