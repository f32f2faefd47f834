#pragma once

#include <stdexcept>
#include <string>

namespace recur {

// Bad parameters or malformed input data. CLI maps this to exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Corrupt or unreadable file contents (bad magic, truncation, overflow).
struct FormatError : InvalidInput {
    explicit FormatError(const std::string& msg) : InvalidInput(msg) {}
};

// Computation failed on structurally valid input (degenerate geometry,
// non-convergence). CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace recur
