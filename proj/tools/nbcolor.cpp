#include <iostream>

#include "nbcolor/cli.hpp"

int main(int argc, char** argv) { return nbc::dispatch(argc, argv, std::cout, std::cerr); }
