#include <iostream>

#include "lsfrp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lsfrp::cli::run(args, std::cout, std::cerr);
}
