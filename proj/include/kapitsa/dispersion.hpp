#pragma once

#include <array>
#include <complex>

#include "kapitsa/params.hpp"

namespace kapitsa {

using Mat2c = std::array<std::complex<double>, 4>; // row-major 2x2

// Dispersion matrix Lambda(k) with its determinant factorization
// lam = det Lambda = k^2 * omega(k). Diagonal entries are real, off-diagonal
// entries purely imaginary (each carries a factor i*k).
struct DispersionMatrix {
    double k = 0.0;
    Mat2c entries{};
    double omega = 0.0;
    std::complex<double> lam;
};

// Assemble Lambda(k) in the transformed (diagonal-identity) form
//   [ k^2 T_{g+4,2}/g_{g+4}   3ik T_{2g+3,2}/g_{g+3} ]
//   [ ik  T_{2g+4,2}/g_{g+4}  3k^2 T_{g+3,4}/g_{g+3} ].
DispersionMatrix lambda_matrix(double k, const ModelParams& params);

// Scalar dispersion factor omega(k) > 0 with lam(k) = k^2 * omega(k).
// Throws if positivity fails (never observed; asserted, not assumed).
double omega(double k, const ModelParams& params);

// Adjugate D(k) with Lambda^{-1} = D / lam.
Mat2c d_matrix(double k, const ModelParams& params);

} // namespace kapitsa
