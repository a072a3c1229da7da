#include <iostream>

#include "domp_tools/commands.hpp"

int main(int argc, char** argv) {
    return domp::tools::run_cli(argc, argv, std::cout, std::cerr);
}
