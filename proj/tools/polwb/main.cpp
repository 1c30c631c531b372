#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return polwb::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
