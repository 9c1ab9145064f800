#include <iostream>

#include "gcorr/cli.hpp"

int main(int argc, char** argv) {
  return gcorr::run_cli(argc, argv, std::cout, std::cerr);
}
