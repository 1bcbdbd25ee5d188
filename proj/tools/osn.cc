#include <iostream>

#include "osn/cli.h"

int main(int argc, char** argv) { return osn::run_cli(argc, argv, std::cout, std::cerr); }
