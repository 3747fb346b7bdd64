#include <iostream>
#include <string>
#include <vector>

#include "bellorbit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bellorbit::run_cli(args, std::cout, std::cerr);
}
