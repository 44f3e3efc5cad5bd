#include <iostream>

#include "hoftrace/cli.hpp"

int main(int argc, char** argv) {
    hoftrace::cli::RunConfig config;
    if (auto code = hoftrace::cli::parse_command_line(argc, argv, config, std::cout, std::cerr)) return *code;
    return hoftrace::cli::run(config, std::cout, std::cerr);
}
