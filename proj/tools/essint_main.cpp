#include <iostream>
#include <string>
#include <vector>

#include "essint/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return essint::run_cli(args, std::cout);
}
