#include "kapitsa/bose_moments.hpp"

#include <bit>
#include <mutex>
#include <cmath>

#include "kapitsa/quadrature.hpp"

namespace kapitsa {

double g_kernel(double C) {
    if (!(C > 0.0)) throw std::domain_error("g_kernel: requires C > 0");
    if (C > 300.0) {
        // (e^C - 1)^2 would overflow; e^{-C}/(1 - e^{-C})^2 with 1 - e^{-C} ~ 1.
        const double e = std::exp(-C);
        return e / ((1.0 - e) * (1.0 - e));
    }
    const double em = std::expm1(C);
    return (1.0 + em) / (em * em);
}

double riemann_zeta(double s) {
    if (!(s > 1.0)) throw std::domain_error("riemann_zeta: requires s > 1");
    // Euler-Maclaurin with N = 20 and four Bernoulli correction terms.
    constexpr int N = 20;
    double sum = 0.0;
    for (int k = 1; k < N; ++k) sum += std::pow(k, -s);
    const double Ns = std::pow(N, -s);
    sum += Ns * N / (s - 1.0);  // N^{1-s}/(s-1)
    sum += 0.5 * Ns;
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30};
    double rising = s;          // s(s+1)...(s+2j-2)
    double fact = 2.0;          // (2j)!
    double Npow = Ns / N;       // N^{-s-2j+1}
    for (int j = 1; j <= 4; ++j) {
        sum += bern[j - 1] / fact * rising * Npow;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        Npow /= static_cast<double>(N) * N;
    }
    return sum;
}

double moment_closed_form(int n) {
    if (n < 2) throw std::domain_error("moment_closed_form: requires integer n >= 2");
    return std::tgamma(n + 1.0) * riemann_zeta(static_cast<double>(n));
}

namespace {

double moment_by_quadrature(double n) {
    // Truncation point: relative tail int_M^inf C^n e^{-C} dC / Gamma(n+1) < 1e-16.
    double cmax = 60.0;
    while (n * std::log(cmax) - cmax - std::lgamma(n + 1.0) > std::log(1e-16))
        cmax *= 1.5;
    auto f = [n](double C) { return std::pow(C, n) * g_kernel(C); };
    return integrate_segments(f, {0.0, 1.0, 0.25 * cmax, cmax}, 1e-12);
}

} // namespace

double MomentTable::moment(double n) {
    if (!(n > 1.0)) throw DivergentIntegral("moment: integral diverges for n <= 1");
    const auto key = std::bit_cast<unsigned long long>(n);
    {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
    }
    const double value = moment_by_quadrature(n);
    std::unique_lock lock(mutex_);
    return entries_.emplace(key, value).first->second;
}

double moment(double n) {
    static MomentTable table;
    return table.moment(n);
}

} // namespace kapitsa
