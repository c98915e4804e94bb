#include <iostream>

#include "hallmhd/cli.hpp"

int main(int argc, char** argv) { return hallmhd::cli::main(argc, argv, std::cout, std::cerr); }
