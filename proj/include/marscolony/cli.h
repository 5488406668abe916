#pragma once

#include <iosfwd>

namespace marscolony {

// Entry point for the `marscolony` tool: `run`, `sweep` and `calibrate`.
// Returns the process exit status; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace marscolony
