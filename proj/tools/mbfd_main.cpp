#include "mbfd/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    mbfd::CommandOutcome outcome = mbfd::dispatch(args, std::cout, std::cerr);
    return outcome.exit_code;
}
