#include <iostream>

#include "oclab/cli.hpp"

int main(int argc, char** argv) { return oclab::cli::run(argc, argv, std::cerr); }
