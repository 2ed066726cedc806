#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sunland::cli {

/// Runs one command line (without the program name) and returns the exit code.
/// Usage errors exit with 2, library errors with 1.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sunland::cli
