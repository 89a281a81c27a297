#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Error categories map 1:1 onto CLI exit codes.
enum class Errc {
    violation = 1,  // a checked property fails on valid input
    input = 2,      // malformed or contract-breaking input
    cap = 3,        // configured size/work cap exceeded
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    [[nodiscard]] Errc code() const { return code_; }

private:
    Errc code_;
};

struct ValidationReport {
    bool ok = true;
    std::string violation;  // first violated invariant, empty when ok

    explicit operator bool() const { return ok; }

    static ValidationReport good() { return {}; }
    static ValidationReport bad(std::string msg) { return {false, std::move(msg)}; }
};

}  // namespace forge
