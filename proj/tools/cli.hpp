#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bibalance::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kProtocol = 3,
  kAborted = 4,
};

// Entry point shared by the executable and the tests. args[0] is the program
// name.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

// Worker cap from BIBALANCE_THREADS, else the hardware concurrency.
unsigned worker_count();

}  // namespace bibalance::cli
