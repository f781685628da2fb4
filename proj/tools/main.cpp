#include <iostream>
#include <string>
#include <vector>

#include "xmo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xmo::cli::run(args, std::cout, std::cerr);
}
