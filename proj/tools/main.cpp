#include <iostream>

#include "marscolony/cli.h"

int main(int argc, char** argv) { return marscolony::run_cli(argc, argv, std::cout, std::cerr); }
