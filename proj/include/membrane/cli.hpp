#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace membrane::cli {

// Runs the command-line tool on `args` (without the program name), writing
// normal output to `out` and diagnostics to `err`. Returns the process exit
// code: 0 success, 1 failed validation checks, 2 usage/config errors,
// 3 numerical or model errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace membrane::cli
