#include <iostream>
#include <string>
#include <vector>

#include "luzawa/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return luzawa::cli::run(args, std::cout, std::cerr);
}
