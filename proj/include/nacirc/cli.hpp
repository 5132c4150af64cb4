#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nacirc {

// Runs the nacirc command line; args excludes the program name. Returns the
// process exit status: 0 success, 2 malformed input, 3 unsupported
// parameters, 1 anything else (including a failing verify run).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nacirc
