#include <iostream>

#include "rittkit/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto out = rittkit::cli::run_command(args);
    std::cout << out.document;
    return out.exit_code;
}
