#include "fbr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fbr::run_command(argc, argv, std::cout, std::cerr); }
