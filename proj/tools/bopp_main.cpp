#include <iostream>
#include <string>
#include <vector>

#include "bopp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bopp::run_cli(args, std::cout, std::cerr);
}
