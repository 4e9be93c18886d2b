#include <iostream>
#include <string>
#include <vector>

#include "baslab/cli.hpp"

int main(int argc, char** argv) {
  return baslab::cli::main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
