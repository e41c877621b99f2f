#include <iostream>

#include "plq/cli.hpp"

int main(int argc, char** argv) { return plq::cli::run(argc, argv, std::cout, std::cerr); }
