#include <iostream>
#include <string>
#include <vector>

#include "solitonlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return solitonlab::run(args, std::cout, std::cerr);
}
