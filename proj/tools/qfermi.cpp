#include <iostream>

#include "qfermi/cli.hpp"

int main(int argc, char** argv) { return qfermi::cli::run(argc, argv, std::cout, std::cerr); }
