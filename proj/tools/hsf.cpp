#include "hsf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hsf::run_cli(argc, argv, std::cout, std::cerr); }
