#include <iostream>

#include "splitmax/cli/commands.hpp"

int main(int argc, char** argv) { return splitmax::cli::main_entry(argc, argv, std::cout, std::cerr); }
