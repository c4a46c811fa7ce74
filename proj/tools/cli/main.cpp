#include <iostream>

#include "run.hpp"

int main(int argc, char** argv) { return dcstring::cli::run(argc, argv, std::cout, std::cerr); }
