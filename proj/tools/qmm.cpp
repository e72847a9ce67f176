#include <iostream>

#include "qmm/cli.hpp"

int main(int argc, char **argv) {
  return qmm::cli::run(argc, argv, std::cout, std::cerr);
}
