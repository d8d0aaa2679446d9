#include <iostream>
#include <string>
#include <vector>

#include "twospace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twospace::run_cli(args, std::cout, std::cerr);
}
