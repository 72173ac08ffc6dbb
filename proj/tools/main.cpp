#include <iostream>

#include "hmetric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hmetric::run_cli(args, std::cout, std::cerr);
}
