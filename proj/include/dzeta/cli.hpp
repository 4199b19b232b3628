#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dzeta::cli {

/// Runs one subcommand; args exclude the program name. Reports go to out,
/// diagnostics to err. Returns 0 on success, 1 when selftest has a failing
/// check, 2 on invalid input and 3 when a resource cap is hit.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dzeta::cli
