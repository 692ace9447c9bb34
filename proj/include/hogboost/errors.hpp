#pragma once
#include <stdexcept>
#include <string>

namespace hogboost {

// Bad or unusable input data (CSV parse failures, missing values,
// label-domain violations, shape mismatches).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Leaf solver denominator G2 + lambda is not positive. Reachable only with
// lambda = 0 and a non-convex point of the loss.
struct DegenerateDenominatorError : std::domain_error {
    explicit DegenerateDenominatorError(const std::string& msg)
        : std::domain_error(msg) {}
};

// Model document does not match the expected schema or format version.
struct ModelFormatError : std::runtime_error {
    explicit ModelFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hogboost
