#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace suppkit::cli {

/// Runs one command line (args[0] is the program name). Returns the exit code;
/// errors are reported as a single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace suppkit::cli
