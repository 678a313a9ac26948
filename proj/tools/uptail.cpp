#include <iostream>
#include <string>
#include <vector>

#include "uptail/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return uptail::run(args, std::cout, std::cerr);
}
