#include <iostream>
#include <string>
#include <vector>

#include "barypoly/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return barypoly::cli::dispatch(args, std::cout, std::cerr);
}
