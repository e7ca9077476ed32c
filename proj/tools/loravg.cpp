#include <iostream>

#include "loravg/cli.hpp"

int main(int argc, char** argv) { return loravg::cli::dispatch(argc, argv, std::cout, std::cerr); }
