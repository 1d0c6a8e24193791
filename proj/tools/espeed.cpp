#include <iostream>

#include "espeed/cli.hpp"

int main(int argc, char** argv)
{
        std::vector<std::string> args(argv, argv + argc);
        return espeed::cli::run(args, std::cout, std::cerr);
}
