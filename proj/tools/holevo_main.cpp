#include <iostream>
#include <string>
#include <vector>

#include "holevo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return holevo::run_command(args, std::cout, std::cerr);
}
