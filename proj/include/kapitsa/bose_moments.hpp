#pragma once

#include <map>
#include <shared_mutex>

#include "kapitsa/errors.hpp"

namespace kapitsa {

// Equilibrium linearization weight g(C) = e^C / (e^C - 1)^2, evaluated in a
// cancellation- and overflow-free form. Throws DivergentIntegral-compatible
// std::domain_error for C <= 0.
double g_kernel(double C);

// Riemann zeta for real s > 1 (Euler-Maclaurin; independent of any quadrature).
double riemann_zeta(double s);

// Closed-form moment Gamma(n+1) * zeta(n), integer n >= 2. Test oracle for moment().
double moment_closed_form(int n);

// Memoized power moments g_n = int_0^inf C^n g(C) dC, n > 1 (n real).
// Keyed by the exact bit pattern of n; concurrent reads are lock-shared.
class MomentTable {
public:
    double moment(double n);

private:
    std::map<unsigned long long, double> entries_;
    mutable std::shared_mutex mutex_;
};

// Process-wide moment table (the solver re-requests a handful of exponents).
double moment(double n);

} // namespace kapitsa
