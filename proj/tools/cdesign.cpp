#include <iostream>

#include "cdesign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cdesign::run_cli(args, std::cout, std::cerr);
}
