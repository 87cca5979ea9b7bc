#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sl2zn {

enum class ExitCode : int { ok = 0, verification_failed = 1, bad_input = 2 };

// Runs one command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sl2zn
