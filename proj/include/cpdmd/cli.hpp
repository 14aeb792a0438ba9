#pragma once

#include <string>
#include <vector>

namespace cpdmd {

// Full command-line driver (subcommands detect, simulate, evaluate,
// benchmark, theory_check). `args` excludes the program name. Exit codes:
// 0 success, 1 usage error, 2 data error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace cpdmd
