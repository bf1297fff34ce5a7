#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return weighwright::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
