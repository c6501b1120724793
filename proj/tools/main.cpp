#include <iostream>
#include <vector>

#include "dlw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dlw::run_cli(args, std::cout, std::cerr);
}
