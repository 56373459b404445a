#include "kapitsa/jump_solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "kapitsa/bose_moments.hpp"
#include "kapitsa/dispersion.hpp"
#include "kapitsa/errors.hpp"
#include "kapitsa/kernel_integrals.hpp"
#include "kapitsa/parallel.hpp"

namespace kapitsa {

namespace {

using cplx = std::complex<double>;

// Measure p in |E1| ~ k^-p from the three smallest grid nodes and reject
// growth beyond the expected residual simple pole.
double origin_growth(const SpectralVector& sv, bool strict) {
    if (sv.e1.size() < 3) return 0.0;
    const double a0 = std::abs(sv.e1[0]), a2 = std::abs(sv.e1[2]);
    if (a0 == 0.0 || a2 == 0.0) return 0.0;
    const double p = std::log(a0 / a2) / std::log(sv.grid.nodes[2] / sv.grid.nodes[0]);
    // After a correct elimination E1 decays toward the origin (measured
    // ~k^{+2/3}; the bracket vanishes like k^{(gamma+2)/gamma} and the kernel
    // is non-analytic in k there); a botched elimination leaves the full
    // simple pole ~k^{-1}. The guard separates the two regimes. At higher
    // orders the exponent is reported as a diagnostic only (the source is
    // itself a quadrature, so its k -> 0 bracket carries quadrature noise).
    if (strict && p > 0.5)
        throw SingularOrderError("spectral amplitude still carries the origin pole", p);
    return p;
}

} // namespace

double excitation_energy(double p, const PhysicalParams& phys) {
    if (p < 0.0) throw std::domain_error("excitation_energy: p must be >= 0");
    const double phonon = phys.u0 * p;
    const double free_p = phys.m_mass > 0.0 ? p * p / (2.0 * phys.m_mass) : 0.0;
    return std::hypot(phonon, free_p);
}

double phonon_energy(double p, const PhysicalParams& phys) { return phys.u0 * p; }

double free_particle_energy(double p, const PhysicalParams& phys) {
    if (!(phys.m_mass > 0.0))
        throw std::domain_error("free_particle_energy: requires m_mass > 0");
    return p * p / (2.0 * phys.m_mass);
}

double epsilon0(const ModelParams& params) {
    params.validate();
    return 2.0 * moment(params.gamma + 3.0) / (3.0 * moment(params.gamma + 4.0));
}

SpectralVector zeroth_spectral(const KGrid& grid, const ModelParams& params,
                               double b_plus, double eps0) {
    params.validate();
    const double g = params.gamma;
    SpectralVector sv;
    sv.grid = grid;
    sv.order = 0;
    const std::size_t n = grid.nodes.size();
    sv.e0.resize(n);
    sv.e1.resize(n);
    parallel_for(n, [&](std::size_t i) {
        const double k = grid.nodes[i];
        // Pole-eliminated bracket: its k = 0 value is taken in closed form (it
        // vanishes by the choice of eps0 up to roundoff) and the k-dependence
        // enters through cancellation-free T(k) - T(0) integrals, so the
        // bracket's ~k^2 smallness is not lost to quadrature noise.
        const double b0 = (eps0 * t_zero({3.0 * g + 4.0, 1, g}) -
                           b_plus * t_zero({3.0 * g + 3.0, 2, g})) +
                          eps0 * t_integral_delta({3.0 * g + 4.0, 1, g}, k) -
                          b_plus * t_integral_delta({3.0 * g + 3.0, 2, g}, k);
        const cplx b1 = cplx(0.0, k) * (b_plus * t_integral({2.0 * g + 3.0, 4, g}, k) +
                                        eps0 * t_integral({2.0 * g + 4.0, 3, g}, k));
        const Mat2c D = d_matrix(k, params);
        const cplx lam = k * k * omega(k, params);
        sv.e0[i] = (D[0] * b0 + D[1] * b1) / lam;
        sv.e1[i] = (D[2] * b0 + D[3] * b1) / lam;
    });
    sv.origin_growth_exponent = origin_growth(sv, true);
    return sv;
}

namespace {

// Neumann matrix application N(k) = (1/pi) int J(k,k1) E(k1) dk1 on the grid.
// The truncated k1 > kmax remainder is closed by a power law fitted to the
// last decade of the integrand; tail_fraction reports its share of the total.
struct NeumannRow {
    cplx n0, n1;
    double tail_fraction = 0.0;
};

NeumannRow neumann_apply(double k, const SpectralVector& e, const ModelParams& p,
                         bool audit_tail) {
    const double g = p.gamma;
    const double g3 = moment(g + 3.0), g4 = moment(g + 4.0);
    const std::size_t n = e.grid.nodes.size();
    cplx acc0(0.0), acc1(0.0);
    double tail_frac = 0.0;
    std::vector<double> mag0(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k1 = e.grid.nodes[j], w = e.grid.weights[j];
        const double j11 = j_integral({4.0 * g + 4.0, 1, g}, k, k1) / g4;
        const double j12 = 3.0 * j_integral({3.0 * g + 3.0, 3, g}, k, k1) / g3;
        const double j21 = j_integral({3.0 * g + 4.0, 3, g}, k, k1) / g4;
        const double j22 = 3.0 * j_integral({4.0 * g + 3.0, 3, g}, k, k1) / g3;
        const cplx ik(0.0, k);
        const cplx c0 = j11 * e.e0[j] - ik * j12 * e.e1[j];
        const cplx c1 = -ik * j21 * e.e0[j] + j22 * e.e1[j];
        acc0 += w * c0;
        acc1 += w * c1;
        mag0[j] = std::abs(c0);
        if (j == n - 1) {
            // Power-law closure of the truncated k1 > kmax remainder, fitted
            // to the last five nodes: int_K^inf c(K) (K/k1)^p dk1 = c(K) K/(p-1).
            const std::size_t j0 = n - 6;
            if (mag0[n - 1] > 0.0 && mag0[j0] > 0.0) {
                const double pexp = std::log(mag0[j0] / mag0[n - 1]) /
                                    std::log(e.grid.nodes[n - 1] / e.grid.nodes[j0]);
                if (pexp > 1.05) {
                    const double scale = e.grid.nodes[n - 1] / (pexp - 1.0);
                    acc0 += c0 * scale;
                    acc1 += c1 * scale;
                    tail_frac = mag0[n - 1] * scale / std::abs(acc0);
                } else {
                    // A flat fit over the last nodes is either a genuinely
                    // unresolved tail or boundary pollution of a negligible
                    // one (higher-order amplitudes wobble near kmax). Only
                    // the significant case is an error.
                    const double crude = mag0[n - 1] * e.grid.nodes[n - 1];
                    if (audit_tail && crude > 1e-3 * std::abs(acc0))
                        throw TailTruncationError(
                            "Neumann k1-integral tail decays too slowly", pexp);
                    tail_frac = crude / std::abs(acc0);
                }
            }
        }
    }
    return {acc0 / M_PI, acc1 / M_PI, tail_frac};
}

} // namespace

std::pair<double, SpectralVector> next_order(const SpectralVector& prev,
                                             const ModelParams& params,
                                             const SeriesOptions& opts) {
    params.validate();
    const double g = params.gamma;
    const KGrid& grid = prev.grid;
    const std::size_t n = grid.nodes.size();

    SpectralVector sv;
    sv.grid = grid;
    sv.order = prev.order + 1;
    sv.e0.assign(n, cplx(0.0));
    sv.e1.assign(n, cplx(0.0));

    if (opts.disable_neumann) return {0.0, sv}; // J == 0: eps_i = 0, E^(i) = 0

    // Regularity at k = 0: the off-diagonal J entries carry a factor k, so only
    // the (1,1) block survives and eps_i T_{3g+4,1}(0) = N0(0).
    const NeumannRow at0 = neumann_apply(0.0, prev, params, true);
    const double t2_at0 = t_zero({3.0 * g + 4.0, 1, g});
    if (!(std::abs(t2_at0) > 0.0))
        throw SingularOrderError("degenerate T2(0); regularity condition unsolvable", 0.0);
    const double eps_i = at0.n0.real() / t2_at0;

    parallel_for(n, [&](std::size_t i) {
        const double k = grid.nodes[i];
        const NeumannRow nr = neumann_apply(k, prev, params, false);
        const cplx b0 = eps_i * t_integral({3.0 * g + 4.0, 1, g}, k) - nr.n0;
        const cplx b1 = cplx(0.0, k) * eps_i * t_integral({2.0 * g + 4.0, 3, g}, k) - nr.n1;
        const Mat2c D = d_matrix(k, params);
        const cplx lam = k * k * omega(k, params);
        sv.e0[i] = (D[0] * b0 + D[1] * b1) / lam;
        sv.e1[i] = (D[2] * b0 + D[3] * b1) / lam;
    });
    sv.origin_growth_exponent = origin_growth(sv, false);
    sv.tail_fraction = at0.tail_fraction;
    return {eps_i, sv};
}

JumpReport epsilon_T(const ModelParams& params, int orders, double b_plus,
                     const SeriesOptions& opts) {
    params.validate();
    if (orders < 1) throw std::domain_error("epsilon_T: orders must be >= 1");

    JumpReport rep;
    const double eps0 = epsilon0(params) * b_plus;
    rep.epsilon_terms.push_back(eps0);

    if (orders > 1) {
        SpectralVector sv = zeroth_spectral(opts.grid, params, b_plus, eps0);
        rep.diagnostics.push_back(sv.origin_growth_exponent);
        double worst_tail = 0.0;
        for (int i = 1; i < orders; ++i) {
            auto [eps_i, next] = next_order(sv, params, opts);
            rep.epsilon_terms.push_back(eps_i);
            rep.diagnostics.push_back(next.origin_growth_exponent);
            worst_tail = std::max(worst_tail, next.tail_fraction);
            sv = std::move(next);
        }
        // The order-0 amplitude decays only like 1/k, so the k1-integral behind
        // eps_1 converges slowly; the remainder beyond kmax is closed by a
        // fitted power law and its share is reported when non-negligible.
        if (worst_tail > opts.tail_tol) {
            char buf[120];
            std::snprintf(buf, sizeof buf,
                          "k1-integral tail closure carries %.1f%% of the Neumann "
                          "term; raise kmax to tighten it", 100.0 * worst_tail);
            rep.warnings.push_back(buf);
        }
    }

    // Flag a (1-q)-series whose terms stop shrinking; never truncate silently.
    int flat = 0;
    for (std::size_t i = 1; i < rep.epsilon_terms.size(); ++i) {
        if (std::abs(rep.epsilon_terms[i]) >= std::abs(rep.epsilon_terms[i - 1]))
            ++flat;
        else
            flat = 0;
        if (flat >= 3) {
            rep.warnings.push_back("series terms non-decreasing for three consecutive orders");
            break;
        }
    }

    const double omq = 1.0 - params.q;
    double sum = 0.0, pw = 1.0;
    for (double term : rep.epsilon_terms) {
        sum += term * pw;
        pw *= omq;
    }
    rep.epsilon_T = (1.0 + params.q) / omq * sum;
    rep.C_coeff = jump_coefficient(params);
    rep.R = std::numeric_limits<double>::quiet_NaN();
    rep.orders_used = orders;
    return rep;
}

double b_plus_from_flux(double Q_x, const PhysicalParams& phys) {
    phys.validate();
    const double kT = constants::k_B * phys.T_s;
    return 6.0 * M_PI * M_PI / moment(3.0) * std::pow(constants::hbar, 3) *
           phys.u0 * phys.u0 * Q_x / ((2.0 * phys.s + 1.0) * std::pow(kT, 4));
}

double jump_coefficient(const ModelParams& params) {
    params.validate();
    return 4.0 * M_PI * M_PI * moment(params.gamma + 3.0) /
           (moment(3.0) * moment(params.gamma + 4.0)) * (1.0 + params.q) /
           (1.0 - params.q);
}

double kapitsa_resistance(const ModelParams& params, const PhysicalParams& phys) {
    params.validate();
    phys.validate();
    return jump_coefficient(params) * std::pow(constants::hbar, 3) * phys.u0 * phys.u0 /
           ((2.0 * phys.s + 1.0) * std::pow(constants::k_B, 4) * std::pow(phys.T_s, 3));
}

} // namespace kapitsa
