#include <iostream>

#include "orthokit/cli.hpp"

int main(int argc, char** argv) { return orthokit::run_cli(argc, argv, std::cout, std::cerr); }
