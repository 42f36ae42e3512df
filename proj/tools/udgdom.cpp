#include <iostream>

#include "udg/cli.hpp"

int main(int argc, char** argv) {
    return udg::cli::run_main(argc, argv, std::cout, std::cerr);
}
