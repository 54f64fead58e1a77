#include <iostream>

#include "pfw/cli.hpp"

int main(int argc, char** argv) { return pfw::cli::run(argc, argv, std::cout, std::cerr); }
