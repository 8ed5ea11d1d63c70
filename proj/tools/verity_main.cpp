#include <string>
#include <vector>

#include "verity/harness/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return verity::harness::cli(args);
}
