#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  const bool color = ::isatty(STDOUT_FILENO) && std::getenv("SFTP_SIM_NO_COLOR") == nullptr;
  return sftp::cli::run(argc, argv, {std::cout, std::cerr, color});
}
