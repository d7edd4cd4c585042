#include <iostream>

#include "lsakit/cli.hpp"

int main(int argc, char** argv) { return lsakit::cli::run(argc, argv, std::cout, std::cerr); }
