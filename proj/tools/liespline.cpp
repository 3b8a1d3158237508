#include <iostream>

#include "liespline/cli.hpp"

int main(int argc, char** argv) {
  return liespline::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
