#include <iostream>
#include <string>
#include <vector>

#include "etf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return etf::cli::dispatch(args, std::cout, std::cerr, std::cin);
}
