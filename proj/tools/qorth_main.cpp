#include <iostream>
#include <string>
#include <vector>

#include "qorth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qorth::cli::run(args, std::cout, std::cerr);
}
