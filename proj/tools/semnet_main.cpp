#include <iostream>
#include <string>
#include <vector>

#include "semnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return semnet::cli::run(args, std::cout, std::cerr);
}
