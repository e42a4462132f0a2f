#include <iostream>

#include "antpath/cli.hpp"

int main(int argc, char** argv) { return antpath::cli::run(argc, argv, std::cout, std::cerr); }
