#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qst::cli {

// Dispatches argv (without the program name) to a subcommand.
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure,
// 3 I/O error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qst::cli
