#include <iostream>

#include "commands.h"

int main(int argc, char** argv) {
  return powersieve::cli::run(argc, argv, std::cout, std::cerr);
}
