#include "widthbright/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return wb::cli::run(argc, argv, std::cout, std::cerr);
}
