#pragma once

#include <iosfwd>

namespace pctsim {

// Full command-line surface, in-process so tests can drive it. Returns the
// process exit code: 0 success, 1 configuration error, 2 runtime error.
// All primary output goes to `out` unless --out redirects it to a file;
// diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pctsim
