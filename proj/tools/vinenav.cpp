#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "vinenav/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vinenav::cli::main(args, std::getenv("VINEYARD_NAV_SEED"), std::cout, std::cerr);
}
