#include <iostream>

#include "polarlens/commands.hpp"

int main(int argc, char** argv) { return polarlens::cli::run(argc, argv, std::cout, std::cerr); }
