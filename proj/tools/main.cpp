#include "kbound/cli.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    return kbound::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                            std::cerr);
}
