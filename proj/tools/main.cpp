#include <iostream>
#include <string>
#include <vector>

#include "mbqc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return mbqc::cli::run(args, std::cout, std::cerr);
}
