#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace combiseg::cli {

/// Runs one command line (without the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace combiseg::cli
