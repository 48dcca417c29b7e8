#include "sparselag/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return sparselag::run_cli(argc, argv, std::cout, std::cerr);
}
