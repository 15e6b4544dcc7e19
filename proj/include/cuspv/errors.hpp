#pragma once

#include <stdexcept>
#include <string>

namespace cuspv {

// Bad user input: malformed config, out-of-range flag, unreadable file.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data failed validation (cache rows, Maass files, weight tables).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine could not meet its contract: non-convergent
// quadrature, non-stabilizing series, repeated eigenvalue, truncation
// bound unsatisfiable.  Never silently downgraded.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cuspv
