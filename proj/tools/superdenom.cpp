#include <iostream>

#include "superdenom/cli.hpp"

int main(int argc, char** argv) {
    return superdenom::run_cli(argc, argv, std::cout, std::cerr);
}
