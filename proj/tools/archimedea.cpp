#include <cstdio>
#include <string>
#include <vector>

#include "archimedea/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = archimedea::cli::run(args);
    std::puts(result.json.c_str());
    return result.exit_code;
}
