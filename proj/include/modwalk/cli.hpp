#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modwalk {

/// Command-line driver; args excludes the program name.  Returns 0 on
/// success, 1 on validation errors (unknown flags, malformed numbers,
/// domain violations), 2 on resource exhaustion.  With fixed flags and
/// seed the produced output is byte-identical across runs.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace modwalk
