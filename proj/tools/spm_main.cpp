#include <iostream>
#include <string>
#include <vector>

#include "spm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return spm::run_cli(args, std::cout, std::cerr);
}
