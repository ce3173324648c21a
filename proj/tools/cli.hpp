#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copos::cli {

enum ExitCode { kOk = 0, kMismatch = 1, kInputError = 2 };

/// Runs one command line (without the program name). Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count when --jobs is absent: $COPOS_JOBS, else the hardware concurrency.
int default_jobs();

}  // namespace copos::cli
