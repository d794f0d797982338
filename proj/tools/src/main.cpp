#include <iostream>

#include "casimir_cli/cli.hpp"

int main(int argc, char** argv) { return casimir::cli::run(argc, argv, std::cout, std::cerr); }
