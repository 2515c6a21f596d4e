#include <iostream>
#include <string>
#include <vector>

#include "fockpsi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fockpsi::run(args, std::cout, std::cerr);
}
