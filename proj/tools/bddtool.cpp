#include <iostream>

#include "lpbdd/cli.hpp"

int main(int argc, char** argv) { return lpbdd::run_cli(argc, argv, std::cout, std::cerr); }
