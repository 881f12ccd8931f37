#include <iostream>

#include "ssns/cli.hpp"

int main(int argc, char** argv) {
  return ssns::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
