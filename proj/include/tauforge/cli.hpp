#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tauforge {

/// Entry point for the command line driver. `args` excludes the program name.
/// Returns the process exit code: 0 on success, 1 when a verification or
/// cross-check fails, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tauforge
