#include <iostream>
#include <string>
#include <vector>

#include "markoff/cli/run.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return markoff::cli::run_command(args, std::cout, std::cerr);
}
