#pragma once

#include <string>
#include <vector>

namespace burgers::cli {

// Runs one CLI invocation. `args` excludes the program name. Exit codes:
// 0 success, 1 usage or input errors, 2 verification failure, 3 numerical
// non-convergence.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace burgers::cli
