#include <iostream>

#include "sl2zn/cli.hpp"

int main(int argc, char** argv) {
  return sl2zn::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
