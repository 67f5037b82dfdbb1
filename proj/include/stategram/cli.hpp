#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stategram {

/// Runs one command line (without the program name). Returns 0 on success, 1 on a negative
/// decision (not a member, empty language, invalid grammar) and 2 on errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stategram
