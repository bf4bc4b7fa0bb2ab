#include <iostream>
#include <string>
#include <vector>

#include "lqw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lqw::cli_run(args, std::cout, std::cerr);
}
