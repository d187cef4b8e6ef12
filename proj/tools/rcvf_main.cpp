#include <iostream>

#include "rcvf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rcvf::run(args, std::cout, std::cerr);
}
