#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kapitsa {

// Requested integral does not converge for the given exponents.
struct DivergentIntegral : std::domain_error {
    using std::domain_error::domain_error;
};

// Iterative scheme failed to reach its tolerance; carries the residual history.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, std::vector<double> residuals = {})
        : std::runtime_error(what), history(std::move(residuals)) {}
    std::vector<double> history;
};

// Tail of a semi-infinite quadrature could not be bounded below the tolerance.
struct TailTruncationError : std::runtime_error {
    TailTruncationError(const std::string& what, double bound)
        : std::runtime_error(what), tail_bound(bound) {}
    double tail_bound;
};

// Spectral amplitude grows faster near k = 0 than the eliminated pole allows.
struct SingularOrderError : std::runtime_error {
    SingularOrderError(const std::string& what, double exponent)
        : std::runtime_error(what), growth_exponent(exponent) {}
    double growth_exponent;
};

// Discrete solution violates an a-posteriori grid-quality check.
struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kapitsa
