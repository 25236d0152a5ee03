#include <iostream>

#include "linefol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return linefol::cli::run(args, std::cout, std::cerr);
}
