#include <iostream>

#include "su11/cli.hpp"

int main(int argc, char** argv) { return su11::run_cli(argc, argv, std::cout, std::cerr); }
