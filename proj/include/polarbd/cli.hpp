#pragma once

#include <string>
#include <vector>

namespace polarbd {

// Full command-line entry point, in-process testable.
// Returns 0 on success, 1 on invalid configuration, 2 on runtime/I-O failure.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args excludes the program name

}  // namespace polarbd
