#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgonal {

/// Dispatches a CLI invocation (argv without the program name).
/// Exit codes: 0 computed result (including negative answers), 2 usage or
/// domain error, 3 decider cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgonal
