#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sciind::cli {

enum ExitCode { kOk = 0, kInputError = 1, kUsageError = 2 };

/// Runs one command line. `args[0]` is the program name. Data goes to `out`
/// (or files named by --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sciind::cli
