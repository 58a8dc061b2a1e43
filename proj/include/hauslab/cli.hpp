#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hauslab::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1,
    kMalformed = 2,
    kAmbientMismatch = 3,
    kNestingViolation = 4,
};

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hauslab::cli
