#pragma once

#include <ostream>

namespace sftp::cli {

/// Exit codes of sftp-sim.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kUndeliverable = 2,
  kIoError = 3,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

int run(int argc, const char* const* argv, Streams streams);

}  // namespace sftp::cli
