#include <string>
#include <vector>

#include "tdck/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tdck::run_cli(args);
}
