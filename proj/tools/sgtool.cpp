#include <iostream>

#include "stategram/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return stategram::run_command(args, std::cout, std::cerr);
}
