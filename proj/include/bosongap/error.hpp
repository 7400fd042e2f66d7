#pragma once

#include <stdexcept>
#include <string>

namespace bosongap {

// Bad input: out-of-range parameters, malformed codes, mismatched truncations.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation ran but could not certify its result (non-convergence,
// failed numerical check).
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bosongap
