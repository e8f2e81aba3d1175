#include <iostream>
#include <string>
#include <vector>

#include "torus1p/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return torus1p::cli::run(std::move(args), std::cout, std::cerr);
}
