#include <iostream>

#include "relicpress/cli.hpp"

int main(int argc, char** argv) {
    return relicpress::cli::run(argc, argv, std::cout, std::cerr);
}
