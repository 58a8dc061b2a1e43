#include <iostream>

#include "hauslab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hauslab::cli::run(args, std::cout, std::cerr);
}
