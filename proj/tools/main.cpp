#include <iostream>
#include <string>
#include <vector>

#include "hdalpha/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return hdalpha::cli_main(args, std::cout, std::cerr);
}
