// SPDX-License-Identifier: MIT
#include <iostream>

#include "upt/cli.hpp"

int main(int argc, char** argv) {
  return upt::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
