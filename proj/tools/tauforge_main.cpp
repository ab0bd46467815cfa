#include <iostream>
#include <vector>

#include "tauforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tauforge::run_cli(args, std::cout, std::cerr);
}
