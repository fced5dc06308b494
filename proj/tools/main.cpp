#include <iostream>

#include "inoz/cli.hpp"

int main(int argc, char** argv) { return inoz::run_cli(argc, argv, std::cout, std::cerr); }
