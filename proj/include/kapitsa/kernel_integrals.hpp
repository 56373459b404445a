#pragma once

#include "kapitsa/errors.hpp"

namespace kapitsa {

// Index of a weighted kernel integral: exponent m of C, exponent l of mu,
// and the collision exponent gamma entering the denominator C^{2*gamma}.
struct TIndex {
    double m;
    int l;
    double gamma;
};

// T_{m,l}(k) = int_0^1 int_0^inf mu^l C^m g(C) / (C^{2g} + k^2 mu^2) dC dmu.
// Even in k (|k| is used); relative error <= 1e-9.
double t_integral(const TIndex& idx, double k);

// Closed-form limit T_{m,l}(0) = g_{m-2g} / (l+1); requires m - 2*gamma > 1.
double t_zero(const TIndex& idx);

// T_{m,l}(k) - T_{m,l}(0) as a single integral, free of the k -> 0
// cancellation of forming the difference; requires m - 2*gamma > 1.
double t_integral_delta(const TIndex& idx, double k);

// J_{m,l}(k,k1) = int_0^1 int_0^inf mu^l C^m g(C)
//                 / ((C^{2g} + k^2 mu^2)(C^{2g} + k1^2 mu^2)) dC dmu.
// Symmetric in (k, k1); relative error <= 1e-8. Supports the odd mu-exponents
// l = 1, 3 that the Neumann matrix uses.
double j_integral(const TIndex& idx, double k, double k1);

} // namespace kapitsa
