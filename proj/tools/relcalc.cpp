#include "relcalc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return relcalc::run_cli(argc, argv, std::cout, std::cerr);
}
