#include <iostream>
#include <string>
#include <vector>

#include "preassoc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return preassoc::cli::run(std::move(args), std::cout, std::cerr);
}
