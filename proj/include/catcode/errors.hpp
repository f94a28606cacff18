#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace catcode {

// Failure carries a stable identifier (machine-readable, reused in CLI JSON
// output) plus the process exit code the CLI maps it to: 2 for malformed
// arguments or inputs, 3 for numerical failures.
class error : public std::runtime_error {
public:
    error(std::string id, const std::string& msg, int exit_code)
        : std::runtime_error(msg), id_(std::move(id)), exit_(exit_code) {}

    const std::string& id() const noexcept { return id_; }
    int exit_code() const noexcept { return exit_; }

private:
    std::string id_;
    int exit_;
};

inline error argument_error(const std::string& id, const std::string& msg) {
    return error(id, msg, 2);
}

inline error numeric_error(const std::string& id, const std::string& msg) {
    return error(id, msg, 3);
}

}  // namespace catcode
