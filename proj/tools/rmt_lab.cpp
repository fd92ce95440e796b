#include <iostream>

#include "rmtlab/cli.hpp"

int main(int argc, char** argv) { return rmtlab::run_cli(argc, argv, std::cout, std::cerr); }
