#include "kapitsa/dispersion.hpp"

#include <cmath>

#include "kapitsa/bose_moments.hpp"
#include "kapitsa/errors.hpp"
#include "kapitsa/kernel_integrals.hpp"

namespace kapitsa {

namespace {

void check_k(double k) {
    if (!(k > 0.0)) throw std::domain_error("dispersion: requires k > 0");
}

struct TSet {
    double t_g4_2, t_g3_4, t_2g3_2, t_2g4_2; // the four Lambda ingredients
    double g3, g4;                           // g_{gamma+3}, g_{gamma+4}
};

TSet t_set(double k, const ModelParams& p) {
    const double g = p.gamma;
    return {t_integral({g + 4.0, 2, g}, k), t_integral({g + 3.0, 4, g}, k),
            t_integral({2.0 * g + 3.0, 2, g}, k), t_integral({2.0 * g + 4.0, 2, g}, k),
            moment(g + 3.0), moment(g + 4.0)};
}

// det Lambda = k^2 omega(k) requires omega without any k^2 prefactor:
// expanding the 2x2 determinant gives exactly 3k^2/(g3 g4) [k^2 TT + TT],
// so omega(0) = g_3 g_4 / (3 g_{gamma+3} g_{gamma+4}) > 0 and Lambda^{-1}
// costs one factor k^2, not two.
double omega_of(double k, const TSet& t) {
    return 3.0 / (t.g3 * t.g4) *
           (k * k * t.t_g4_2 * t.t_g3_4 + t.t_2g3_2 * t.t_2g4_2);
}

} // namespace

DispersionMatrix lambda_matrix(double k, const ModelParams& params) {
    check_k(k);
    params.validate();
    const TSet t = t_set(k, params);
    const std::complex<double> ik(0.0, k);
    DispersionMatrix d;
    d.k = k;
    d.entries = {k * k * t.t_g4_2 / t.g4, 3.0 * ik * t.t_2g3_2 / t.g3,
                 ik * t.t_2g4_2 / t.g4, 3.0 * k * k * t.t_g3_4 / t.g3};
    d.omega = omega_of(k, t);
    d.lam = k * k * d.omega;
    return d;
}

double omega(double k, const ModelParams& params) {
    check_k(k);
    params.validate();
    const double w = omega_of(k, t_set(k, params));
    if (!(w > 0.0))
        throw ConvergenceError("omega(k) not positive; dispersion function degenerate", {w, k});
    return w;
}

Mat2c d_matrix(double k, const ModelParams& params) {
    check_k(k);
    params.validate();
    const TSet t = t_set(k, params);
    const std::complex<double> ik(0.0, k);
    return {3.0 * k * k * t.t_g3_4 / t.g3, -3.0 * ik * t.t_2g3_2 / t.g3,
            -ik * t.t_2g4_2 / t.g4, k * k * t.t_g4_2 / t.g4};
}

} // namespace kapitsa
