#include <iostream>

#include "sbk/cli.hpp"

int main(int argc, char** argv) { return sbk::cli::run(argc, argv, std::cout, std::cerr); }
