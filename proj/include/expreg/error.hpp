#pragma once

#include <stdexcept>
#include <string>

namespace expreg {

// Every semantic failure carries a stable name (e.g. "OutOfBounds") that the
// CLI prints verbatim on standard error.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Usage errors (bad flags, malformed files) map to exit code 2 in the CLI.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace expreg
