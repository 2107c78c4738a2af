#include <string>
#include <vector>

#include "holistic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return holistic::cli::run(std::move(args));
}
