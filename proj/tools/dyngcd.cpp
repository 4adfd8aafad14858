#include <iostream>

#include "dyngcd/cli.hpp"

int main(int argc, char** argv) { return dyngcd::run_cli(argc, argv, std::cout, std::cerr); }
