#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blocktrans::cli {

/// Dispatches one CLI invocation. `args` excludes the program name.
/// Certificates and reports go to `out`, structured error documents to
/// `err`. Exit codes: 0 feasible / all checks passed, 1 infeasible or
/// violation found, 2 usage or input error, 3 guard exceeded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tool version string, e.g. "0.1.0".
const char* tool_version();

}  // namespace blocktrans::cli
