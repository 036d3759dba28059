#include <iostream>

#include "pealab/cli.hpp"

int main(int argc, char** argv) { return pealab::run_cli(argc, argv, std::cout, std::cerr); }
