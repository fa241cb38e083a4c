#include <iostream>

#include "porac/cli.hpp"

int main(int argc, char** argv) {
  return porac::cli::run(argc, argv, std::cout, std::cerr);
}
