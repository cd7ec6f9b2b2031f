#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tqf::cli {

enum ExitCode : int { ok = 0, usage = 1, integrity = 2, range = 3 };

// args excludes the program name. Tables go to out (or --output), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tqf::cli
