#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipmod::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2 };

/// Runs one command line (without the program name). JSON reports and
/// error documents go to `out` unless --out names a file; help text goes
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipmod::cli
