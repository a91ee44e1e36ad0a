#include <iostream>

#include "rproj/commands.hpp"

int main(int argc, char** argv)
{
    return rproj::cli::run(argc, argv, std::cout, std::cerr);
}
