#include <iostream>

#include "kclust/cli.hpp"

int main(int argc, char** argv) { return kclust::run_cli(argc, argv, std::cout, std::cerr); }
