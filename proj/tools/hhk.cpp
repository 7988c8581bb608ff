#include <iostream>

#include "hhk/cli.hpp"

int main(int argc, char** argv) { return hhk::cli::run_cli(argc, argv, std::cerr); }
