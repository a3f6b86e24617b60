#include "fsw/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return fsw::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
