#include "fracwell/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return fracwell::cli::run(argc, argv, std::cout, std::cerr);
}
