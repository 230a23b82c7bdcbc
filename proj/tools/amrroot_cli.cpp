#include <iostream>
#include <string>
#include <vector>

#include "amrroot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return amrroot::cli::run_cli(args, std::cout, std::cerr);
}
