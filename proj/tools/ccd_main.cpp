#include <iostream>
#include <string>
#include <vector>

#include "ccd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ccd::run_cli(std::move(args), std::cout, std::cerr);
}
