#pragma once

#include <iostream>

namespace cstar::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

// Runs one verb; usage errors go to err, everything else to out.
int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace cstar::cli
