#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "kapitsa/params.hpp"

namespace kapitsa {

// Fourier amplitude pair (E0, E1) sampled on a k-grid. E0 is real-valued and
// even in k, E1 purely imaginary and odd; both are kept complex so the
// structure is an assertable invariant rather than a bookkeeping convention.
struct SpectralVector {
    KGrid grid;
    std::vector<std::complex<double>> e0;
    std::vector<std::complex<double>> e1;
    int order = 0;
    // Measured |E1| ~ k^-p exponent on the three smallest nodes.
    double origin_growth_exponent = 0.0;
    // Share of the k = 0 Neumann integral carried by the power-law tail
    // closure beyond kmax (orders >= 1 only).
    double tail_fraction = 0.0;
};

struct SeriesOptions {
    KGrid grid = KGrid::logarithmic(); // 1e-4 .. 1e3, 400 nodes
    bool disable_neumann = false;      // test hook: zero the J coupling
    double tail_tol = 1e-3;            // warn when the k1 tail closure carries more
};

// Result of the successive-approximation series for the temperature jump.
struct JumpReport {
    std::vector<double> epsilon_terms; // eps_i, absolute (include the B+ factor)
    double epsilon_T = 0.0;            // (1+q)/(1-q) sum eps_i (1-q)^i
    double C_coeff = 0.0;              // C(gamma, q)
    double R = 0.0;                    // Kapitsa resistance, K m^2/W (NaN without phys)
    int orders_used = 0;
    std::vector<double> diagnostics;   // per-order origin growth exponents
    std::vector<std::string> warnings;
};

// Bogoliubov excitation energy and its two limits.
double excitation_energy(double p, const PhysicalParams& phys);
double phonon_energy(double p, const PhysicalParams& phys);        // u0 * p
double free_particle_energy(double p, const PhysicalParams& phys); // p^2 / 2m

// Zeroth-order jump per unit B+: 2 g_{gamma+3} / (3 g_{gamma+4}).
double epsilon0(const ModelParams& params);

// Order-zero spectral solution; eps0 must already eliminate the k = 0 pole.
SpectralVector zeroth_spectral(const KGrid& grid, const ModelParams& params,
                               double b_plus, double eps0);

// One step of the successive-approximation recursion: fixes eps_i by the
// k -> 0 regularity of the first source component and returns E^(i).
std::pair<double, SpectralVector> next_order(const SpectralVector& prev,
                                             const ModelParams& params,
                                             const SeriesOptions& opts = {});

// Assemble the (1-q)-series for the temperature jump through `orders` terms.
JumpReport epsilon_T(const ModelParams& params, int orders, double b_plus,
                     const SeriesOptions& opts = {});

// B+ = 6 pi^2 hbar^3 u0^2 Q_x / (g_3 (2s+1) (k_B T_s)^4).
double b_plus_from_flux(double Q_x, const PhysicalParams& phys);

// Dimensionless jump coefficient C(gamma, q) of the zeroth approximation.
double jump_coefficient(const ModelParams& params);

// Kapitsa resistance R = C(gamma,q) hbar^3 u0^2 / ((2s+1) k_B^4 T_s^3), SI.
double kapitsa_resistance(const ModelParams& params, const PhysicalParams& phys);

} // namespace kapitsa
