#include <iostream>

#include "bdiff/cli.hpp"

int main(int argc, char** argv) {
  return bdiff::cli::main(argc, argv, std::cout, std::cerr);
}
