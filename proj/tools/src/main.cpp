#include <iostream>

#include "ffhyper_cli/cli.hpp"

int main(int argc, char** argv) { return ffhyper::cli::run(argc, argv, std::cout, std::cerr); }
