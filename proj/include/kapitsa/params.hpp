#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace kapitsa {

namespace constants {
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double k_B = 1.380649e-23;     // J/K
}

// Dimensionless problem inputs: collision exponent gamma in nu ~ p^gamma and
// specular reflection coefficient q of the wall.
struct ModelParams {
    double gamma = 3.0;
    double q = 0.0;

    bool phonon_regime() const { return gamma >= 3.0; }

    void validate() const {
        if (!(gamma >= 0.0)) throw std::domain_error("ModelParams: gamma must be >= 0");
        if (!(q >= 0.0 && q < 1.0))
            throw std::domain_error("ModelParams: q must lie in [0, 1)");
    }
};

// Dimensional constants for converting the dimensionless jump to SI.
// a, n_conc, m_mass are optional (0 = not supplied); m_mass is required by the
// free-particle branch of the excitation spectrum.
struct PhysicalParams {
    double T_s = 0.0;    // surface temperature, K
    double u0 = 0.0;     // Bogoliubov sound speed, m/s
    double s = 0.0;      // spin
    double a = 0.0;      // scattering length, m
    double n_conc = 0.0; // concentration, 1/m^3
    double m_mass = 0.0; // particle mass, kg

    void validate() const {
        if (!(T_s > 0.0)) throw std::domain_error("PhysicalParams: T_s must be > 0");
        if (!(u0 > 0.0)) throw std::domain_error("PhysicalParams: u0 must be > 0");
        if (s < 0.0) throw std::domain_error("PhysicalParams: spin must be >= 0");
    }

    // Consistency and regime checks that warn rather than reject.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (a > 0.0 && n_conc > 0.0 && m_mass > 0.0) {
            const double u0_sq = 4.0 * M_PI * constants::hbar * constants::hbar *
                                 a * n_conc / (m_mass * m_mass);
            if (std::abs(u0 * u0 - u0_sq) > 1e-6 * u0_sq)
                w.push_back("u0 inconsistent with 4*pi*hbar^2*a*n/m^2");
        }
        if (m_mass > 0.0 && constants::k_B * T_s > 0.1 * m_mass * u0 * u0)
            w.push_back("k_B*T_s not small against m*u0^2: phonon regime questionable");
        return w;
    }
};

// Logarithmic wavenumber grid on [k_min, k_max] (k = 0 excluded) with
// trapezoidal weights in log k, usable as a quadrature rule over the grid.
struct KGrid {
    std::vector<double> nodes;
    std::vector<double> weights;

    static KGrid logarithmic(double k_min = 1e-4, double k_max = 1e3, int n = 400) {
        if (!(k_min > 0.0 && k_max > k_min && n >= 2))
            throw std::domain_error("KGrid: need 0 < k_min < k_max and n >= 2");
        KGrid g;
        g.nodes.resize(n);
        g.weights.resize(n);
        const double dl = std::log(k_max / k_min) / (n - 1);
        for (int i = 0; i < n; ++i) {
            g.nodes[i] = k_min * std::exp(i * dl);
            g.weights[i] = g.nodes[i] * dl;
        }
        g.weights.front() *= 0.5;
        g.weights.back() *= 0.5;
        return g;
    }
};

} // namespace kapitsa
