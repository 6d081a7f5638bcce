#include <iostream>

#include "arrowkit/cli.hpp"

int main(int argc, char** argv) { return arrowkit::cli::run(argc, argv, std::cout, std::cerr); }
