#pragma once

#include <stdexcept>
#include <string>

namespace archimedea {

// Domain errors carry a stable machine-readable code (kebab-case) next to the
// human-readable message; the CLI reports the code verbatim.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw DomainError(code, msg);
}

} // namespace archimedea
