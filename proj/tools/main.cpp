#include <iostream>

#include "phasemag_cli.hpp"

int main(int argc, char** argv) {
  return phasemag::cli::run_cli(argc, argv, std::cout, std::cerr);
}
