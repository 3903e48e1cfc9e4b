#pragma once

#include <string>
#include <vector>

namespace archimedea::cli {

// One structured-text document per invocation; exit code 0 on ok, 1 on a
// domain error, 2 on a usage error.
struct CommandResult {
    int exit_code = 0;
    std::string json;
};

CommandResult run(const std::vector<std::string>& args);

} // namespace archimedea::cli
