#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cobcalc::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Precision used when --degree is absent: COBCALC_DEFAULT_DEGREE or 6.
int default_degree();

}  // namespace cobcalc::cli
