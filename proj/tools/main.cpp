#include <iostream>

#include "shiftlike/cli.hpp"

int main(int argc, char** argv) { return shiftlike::cli_main(argc, argv, std::cout, std::cerr); }
