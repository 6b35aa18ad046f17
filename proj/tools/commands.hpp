#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linf::cli {

/// Runs one command line (without the program name). Returns 0 for pass,
/// 1 for a failed verdict and 2 for input or usage errors. The report goes to
/// `out`, diagnostics to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linf::cli
