#include <iostream>

#include "fdrthresh/cli/commands.hpp"

int main(int argc, char** argv) { return fdrthresh::cli::run(argc, argv, std::cout, std::cerr); }
