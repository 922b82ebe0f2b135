#include <iostream>

#include "fringelab/cli.hpp"

int main(int argc, char** argv) { return fringelab::run_command_line(argc, argv, std::cout, std::cerr); }
