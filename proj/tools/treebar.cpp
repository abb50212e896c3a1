#include <iostream>

#include "treebar/cli.hpp"

int main(int argc, char** argv) {
  return treebar::cli::run(argc, argv, std::cout, std::cerr);
}
