#include <iostream>
#include <string>
#include <vector>

#include "ncr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncr::cli_run(args, std::cout, std::cerr);
}
