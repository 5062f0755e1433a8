#pragma once

#include <ostream>

namespace davenport::cli {

/// Entry point of the `davenport` tool; returns the process exit code
/// (0 ok, 1 falsified invariant, 2 usage, 3 budget, 4 I/O).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace davenport::cli
