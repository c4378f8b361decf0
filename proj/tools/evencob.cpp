#include <iostream>
#include <string>
#include <vector>

#include "evencob/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return evencob::cli::run_command(args, std::cout, std::cerr);
}
