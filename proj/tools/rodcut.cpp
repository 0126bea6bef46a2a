#include <iostream>

#include "rodcut/cli.hpp"

int main(int argc, char** argv) { return rodcut::cli::run(argc, argv, std::cout, std::cerr); }
