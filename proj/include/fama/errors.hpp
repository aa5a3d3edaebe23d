#pragma once

#include <stdexcept>
#include <string>

namespace fama {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction/argument checks (topology counts, index ranges, spec fields).
struct ValidationError : Error {
    using Error::Error;
};

// Cholesky / inverse square root on a matrix that is not positive definite.
struct NotPositiveDefiniteError : Error {
    NotPositiveDefiniteError(const std::string& what, int pivot, double value)
        : Error(what), pivot_index(pivot), pivot_value(value) {}
    int pivot_index;
    double pivot_value;
};

// Iterative solver hit its cap. `residual` is solver-specific (off-diagonal
// norm for Jacobi, last Rayleigh-quotient change for the power method).
struct NonConvergenceError : Error {
    NonConvergenceError(const std::string& what, double res) : Error(what), residual(res) {}
    double residual;
};

// Correlation model produced something outside its guaranteed envelope.
struct ModelError : Error {
    using Error::Error;
};

// Config file / CLI input problems (mapped to exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fama
