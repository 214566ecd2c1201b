#include <iostream>

#include "bnclass/cli.hpp"

int main(int argc, char** argv) { return bnclass::run_cli(argc, argv, std::cout, std::cerr); }
