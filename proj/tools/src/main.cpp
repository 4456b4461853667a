#include <iostream>
#include <string>
#include <vector>

#include "qsimnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qsimnet::cli::execute(args, std::cout, std::cerr).exit_code;
}
