#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace rmtlab {

/// Entry point of the rmt-lab tool. Exit codes: 0 success, 1 runtime or
/// verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmtlab
