#include <iostream>

#include "xxzqrg/cli.hpp"

int main(int argc, char** argv) { return xxzqrg::run_cli(argc, argv, std::cout, std::cerr); }
