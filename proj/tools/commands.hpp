#pragma once

// Command-line front end. run() parses the arguments and dispatches to one
// subcommand; stats go to `out` as JSON lines, human-readable notes to `err`.
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace twinmat::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twinmat::cli
