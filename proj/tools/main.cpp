#include <iostream>

#include "pctsim/cli.hpp"

int main(int argc, char** argv) {
    return pctsim::cli_main(argc, argv, std::cout, std::cerr);
}
