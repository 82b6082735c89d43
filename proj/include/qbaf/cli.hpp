#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbaf {

// Command line entry point, separated from main() so tests can drive it.
// Subcommands: extract, decide, check, experiment, curves, table.
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qbaf
