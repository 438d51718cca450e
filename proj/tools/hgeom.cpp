#include <iostream>

#include "hgeom/cli.hpp"

int main(int argc, char** argv) {
  return hgeom::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
