#include "davenport/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return davenport::cli::run(argc, argv, std::cout, std::cerr);
}
