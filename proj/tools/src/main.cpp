#include <iostream>

#include "circlech_cli/cli.hpp"

int main(int argc, char** argv) { return circlech::cli::run(argc, argv, std::cout, std::cerr); }
