// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace catspec {

// Malformed or inconsistent run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Any solver-side failure: non-convergence, bracketing failure, ... (CLI exit code 3).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// U1 == U0: the control parameter Lambda is undefined.
struct DegenerateInteractionError : std::domain_error {
    explicit DegenerateInteractionError(const std::string& msg) : std::domain_error(msg) {}
};

// lambda == 0: amplitude phases are unconstrained, branch construction ill-posed.
struct LambdaZeroError : std::domain_error {
    explicit LambdaZeroError(const std::string& msg) : std::domain_error(msg) {}
};

// Operation requires eigenvectors but the Spectrum holds none.
struct MissingEigenvectorError : std::logic_error {
    explicit MissingEigenvectorError(const std::string& msg) : std::logic_error(msg) {}
};

// Branch overlap is ~1: the two mean-field solutions are not distinct.
struct NotInCatRegimeError : std::domain_error {
    explicit NotInCatRegimeError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace catspec
