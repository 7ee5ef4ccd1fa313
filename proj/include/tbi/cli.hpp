#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace tbi {

// Full command-line surface, callable in-process (the test suite drives it
// this way).  `args` excludes the program name.  Returns the process exit
// code: 0 success, 1 verification failure, 2 usage or input error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tbi
