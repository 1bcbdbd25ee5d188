#pragma once

#include <iosfwd>

namespace osn {

// Entry point of the `osn` command line tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace osn
