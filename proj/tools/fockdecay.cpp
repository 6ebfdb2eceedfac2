#include <iostream>
#include <string>
#include <vector>

#include "fockdecay/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fockdecay::cli::main(args, std::cout, std::cerr);
}
