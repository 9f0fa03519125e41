#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ccd {

/// Runs one CLI invocation (without the program name) against the given
/// streams and returns the process exit code:
///   0 success, 1 validation error, 2 model parse error,
///   3 evaluation infeasible (enumeration cap exceeded, or shared leaves in
///   closed mode).
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace ccd
