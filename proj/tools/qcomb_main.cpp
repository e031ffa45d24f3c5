#include <iostream>

#include "qcomb/cli.hpp"

int main(int argc, char** argv) { return qcomb::cli::run(argc, argv, std::cout, std::cerr); }
