#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonloc {

/// Command-line entry point, separated from main() so tests can drive it.
/// `args` excludes the program name. Returns the process exit code:
/// 0 success, 2 validation/usage error, 3 parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonloc
