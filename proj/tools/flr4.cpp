// flr4.cpp — command-line entry point

#include "flr4/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return flr4::cli::run(argc, argv, std::cout, std::cerr);
}
