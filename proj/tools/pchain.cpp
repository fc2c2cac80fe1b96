#include <iostream>

#include <pchain/cli/cli.hpp>

int main(int argc, char** argv)
{
    return pchain::cli::run(argc, argv, std::cout, std::cerr);
}
