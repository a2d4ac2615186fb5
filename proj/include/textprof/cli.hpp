#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace textprof::cli {

// Full command-line front end, callable in-process for tests.  `args` is
// argv without the program name.  Exit codes: 0 ok, 2 config/input error,
// 3 data/noise error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace textprof::cli
