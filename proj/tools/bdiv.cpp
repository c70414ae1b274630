#include <iostream>
#include <string>
#include <vector>

#include "bdiv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bdiv::run_cli(args, std::cout, std::cerr);
}
