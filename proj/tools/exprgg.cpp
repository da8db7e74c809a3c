#include <iostream>
#include <string>
#include <vector>

#include "exprgg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return exprgg::run_cli(args, std::cout, std::cerr);
}
