#include "mall/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mall::run_cli(argc, argv, std::cout, std::cerr); }
