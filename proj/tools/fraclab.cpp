#include "frac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return frac::run_cli(argc, argv, std::cout, std::cerr); }
