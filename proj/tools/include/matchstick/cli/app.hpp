#pragma once

#include <iosfwd>

namespace matchstick {

/// Runs the `matchstick` command line. Returns 0 on success, 1 when a
/// verification fails or a computation raises an error, and 2 for usage and
/// parse errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace matchstick
