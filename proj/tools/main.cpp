#include <iostream>

#include "cvqr/cli/app.hpp"

int main(int argc, char** argv) { return cvqr::cli::run(argc, argv, std::cout, std::cerr); }
