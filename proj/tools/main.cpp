#include <iostream>

#include "microlab/cli/cli.hpp"

int main(int argc, char** argv) { return microlab::cli_dispatch(argc, argv, std::cout, std::cerr); }
