#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spast {

// Exit codes: 0 matching found / check clean, 1 no strongly stable matching /
// blocking pairs found, 2 input error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace spast
