#pragma once

#include <iosfwd>

namespace dqsvt::cli {

enum ExitCode : int {
    kOk = 0,
    kWarnings = 1,
    kInputError = 2,
    kInconsistency = 3,
};

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// the report to `out`. Diagnostics and wall time go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dqsvt::cli
