#include <iostream>

#include "qcalc/cli.hpp"

int main(int argc, char** argv) { return qcalc::cli::run_cli(argc, argv, std::cout, std::cerr); }
