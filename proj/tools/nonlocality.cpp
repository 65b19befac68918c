#include <iostream>
#include <string>
#include <vector>

#include "nonloc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nonloc::run_cli(args, std::cout, std::cerr);
}
