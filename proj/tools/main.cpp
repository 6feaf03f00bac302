#include <iostream>

#include "bwpuzzle/cli.hpp"

int main(int argc, char** argv) {
    return bwpuzzle::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
