#include <iostream>
#include <string>
#include <vector>

#include "halfhandle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hh::cli::run(std::move(args), std::cout, std::cerr);
}
