#include "pwaeb/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return pwaeb::cli::run(argc, argv, std::cout, std::cerr); }
