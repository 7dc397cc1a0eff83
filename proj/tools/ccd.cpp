#include "ccd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ccd::cli::run(argc, argv, std::cout, std::cerr); }
