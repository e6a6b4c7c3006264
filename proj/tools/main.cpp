#include <iostream>
#include <string>
#include <vector>

#include "spectra_forge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return spectra_forge::cli::run(args, std::cout, std::cerr);
}
