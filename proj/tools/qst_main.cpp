#include <iostream>

#include "qst/cli.hpp"

int main(int argc, char** argv) {
  return qst::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
