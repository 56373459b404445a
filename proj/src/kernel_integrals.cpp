#include "kapitsa/kernel_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kapitsa/bose_moments.hpp"
#include "kapitsa/quadrature.hpp"

namespace kapitsa {

namespace {

void check_index(const TIndex& idx) {
    if (idx.gamma < 0.0) throw std::domain_error("kernel integral: gamma must be >= 0");
    if (idx.l < 0) throw std::domain_error("kernel integral: l must be >= 0");
    if (!(idx.m > 1.0))
        throw DivergentIntegral("kernel integral: m <= 1 diverges at C -> 0");
}

// phi_l(w) = int_0^1 mu^l / (1 + w mu^2) dmu, w >= 0.
double mu_phi(int l, double w) {
    if (w < 0.5) {
        // Alternating series sum_j (-w)^j / (l + 2j + 1).
        double sum = 0.0, pw = 1.0;
        for (int j = 0;; ++j) {
            const double term = pw / (l + 2 * j + 1);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            pw *= -w;
        }
        return sum;
    }
    const double sq = std::sqrt(w);
    switch (l) {
        case 0: return std::atan(sq) / sq;
        case 1: return std::log1p(w) / (2.0 * w);
        case 2: return (1.0 - std::atan(sq) / sq) / w;
        case 3: return (0.5 - std::log1p(w) / (2.0 * w)) / w;
        case 4: return (1.0 / 3.0 - (1.0 - std::atan(sq) / sq) / w) / w;
        default: break;
    }
    // Downward recursion from the analytic pair: phi_l = (1/(l-1) - phi_{l-2}) / w.
    double even = std::atan(sq) / sq;       // phi_0
    double odd = std::log1p(w) / (2.0 * w); // phi_1
    for (int j = 2; j <= l; ++j) {
        double& lower = (j % 2 == 0) ? even : odd;
        lower = (1.0 / (j - 1) - lower) / w;
    }
    return (l % 2 == 0) ? even : odd;
}

// phi_l(w) - 1/(l+1), i.e. the mu-integral minus its w = 0 value, evaluated
// without subtractive cancellation for small w.
double mu_phi_delta(int l, double w) {
    if (w < 0.5) {
        double sum = 0.0, pw = -w;
        for (int j = 1;; ++j) {
            const double term = pw / (l + 2 * j + 1);
            sum += term;
            if (std::abs(term) < 1e-17 * std::max(std::abs(sum), 1e-300)) break;
            pw *= -w;
        }
        return sum;
    }
    return mu_phi(l, w) - 1.0 / (l + 1);
}

// Truncation point with relative tail int_M^inf C^m e^{-C} / Gamma(m+1) < 1e-16.
double c_upper(double m) {
    double cmax = 60.0;
    while (m * std::log(cmax) - cmax - std::lgamma(m + 1.0) > std::log(1e-16))
        cmax *= 1.5;
    return cmax;
}

std::vector<double> c_breakpoints(const TIndex& idx, double k, double k1) {
    std::vector<double> pts = {0.0, 1.0, c_upper(idx.m)};
    // C* = k^{1/gamma} marks where the two denominator terms balance.
    if (idx.gamma > 0.0) {
        for (double kk : {k, k1})
            if (kk > 0.0) {
                const double c = std::pow(kk, 1.0 / idx.gamma);
                if (c > 0.0 && c < 1.0) pts.push_back(c);
            }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// int_0^1 mu / ((a2 + s mu^2)(a2 + t mu^2)) dmu, stable for s ~ t and s,t -> 0.
double inner_j_l1(double a2, double s, double t) {
    const double mid = 0.5 * (s + t);
    if (std::abs(s - t) < 1e-6 * (a2 + mid))
        return 1.0 / (2.0 * a2 * (a2 + mid));
    return (std::log1p(s / a2) - std::log1p(t / a2)) / (2.0 * a2 * (s - t));
}

// int_0^1 mu^3 / ((a2 + s mu^2)(a2 + t mu^2)) dmu.
double inner_j_l3(double a2, double s, double t) {
    auto F = [a2](double x) { return x == 0.0 ? 1.0 / a2 : std::log1p(x / a2) / x; };
    const double mid = 0.5 * (s + t);
    if (std::abs(s - t) >= 1e-6 * (a2 + mid))
        return (F(s) - F(t)) / (2.0 * (t - s));
    // Confluent case: -F'(mid)/2 = (F(mid) - 1/(a2+mid)) / (2 mid).
    const double x = mid / a2;
    if (x < 1e-3) {
        // (1/(2 a2^2)) sum_{j>=1} (-x)^{j-1} j/(j+1)
        double sum = 0.0, px = 1.0;
        for (int j = 1; j <= 12; ++j) {
            sum += px * j / (j + 1.0);
            px *= -x;
        }
        return sum / (2.0 * a2 * a2);
    }
    return (F(mid) - 1.0 / (a2 + mid)) / (2.0 * mid);
}

} // namespace

double t_zero(const TIndex& idx) {
    check_index(idx);
    const double n = idx.m - 2.0 * idx.gamma;
    if (!(n > 1.0))
        throw DivergentIntegral("t_zero: m - 2*gamma <= 1 diverges at k = 0");
    return moment(n) / (idx.l + 1);
}

double t_integral(const TIndex& idx, double k) {
    check_index(idx);
    k = std::abs(k); // even in k by structure
    if (k == 0.0) return t_zero(idx);
    const double k2 = k * k;
    const double m = idx.m, tg = 2.0 * idx.gamma;
    const int l = idx.l;
    auto f = [&](double C) {
        const double a2 = std::pow(C, tg);
        if (a2 == 0.0) return 0.0;
        return std::pow(C, m) * g_kernel(C) * mu_phi(l, k2 / a2) / a2;
    };
    return integrate_segments(f, c_breakpoints(idx, k, 0.0), 1e-11);
}

double t_integral_delta(const TIndex& idx, double k) {
    check_index(idx);
    if (!(idx.m - 2.0 * idx.gamma > 1.0))
        throw DivergentIntegral("t_integral_delta: T(0) does not exist");
    k = std::abs(k);
    if (k == 0.0) return 0.0;
    const double k2 = k * k;
    const double m = idx.m, tg = 2.0 * idx.gamma;
    const int l = idx.l;
    auto f = [&](double C) {
        const double a2 = std::pow(C, tg);
        if (a2 == 0.0) return 0.0;
        return std::pow(C, m) * g_kernel(C) * mu_phi_delta(l, k2 / a2) / a2;
    };
    return integrate_segments(f, c_breakpoints(idx, k, 0.0), 1e-11);
}

double j_integral(const TIndex& idx, double k, double k1) {
    check_index(idx);
    if (idx.l != 1 && idx.l != 3)
        throw std::invalid_argument("j_integral: only mu exponents l = 1, 3 are supported");
    k = std::abs(k);
    k1 = std::abs(k1);
    const double zeros = (k == 0.0 ? 1 : 0) + (k1 == 0.0 ? 1 : 0);
    if (!(idx.m - 2.0 * idx.gamma * zeros > 1.0))
        throw DivergentIntegral("j_integral: configuration diverges at C -> 0");
    const double s = k * k, t = k1 * k1;
    const double m = idx.m, tg = 2.0 * idx.gamma;
    const int l = idx.l;
    auto f = [&](double C) {
        const double a2 = std::pow(C, tg);
        if (a2 == 0.0) return 0.0;
        const double inner = (l == 1) ? inner_j_l1(a2, s, t) : inner_j_l3(a2, s, t);
        return std::pow(C, m) * g_kernel(C) * inner;
    };
    return integrate_segments(f, c_breakpoints(idx, k, k1), 1e-10);
}

} // namespace kapitsa
