#include <iostream>

#include "qball/cli.hpp"

int main(int argc, char** argv) { return qball::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
