#pragma once

#include <stdexcept>

namespace ids {

/// A configured size/pattern cap was exceeded (CLI exit code 3).
struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factorization or eigensolver failure (CLI exit code 4).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ids
