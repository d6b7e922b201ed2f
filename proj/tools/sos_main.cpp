#include <iostream>

#include "sos/cli.hpp"

int main(int argc, char** argv) { return sos::cli::run(argc, argv, std::cout, std::cerr); }
