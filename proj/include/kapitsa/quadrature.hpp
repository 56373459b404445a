#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "kapitsa/errors.hpp"

namespace kapitsa {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Gauss-Legendre rule mapped to [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

namespace detail {

// Gauss 7 / Kronrod 15 abscissae (positive half) and weights.
struct GK15 {
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327};
};

template <class F>
inline double gk15(F&& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = GK15::wgk[7] * fc;
    double gauss = GK15::wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * GK15::xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += GK15::wgk[i] * fsum;
        if (i % 2 == 1) gauss += GK15::wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    err = std::abs(kron - gauss);
    return kron;
}

} // namespace detail

// Adaptive Gauss-Kronrod 7/15 on [a, b]: bisect the interval with the largest
// error estimate until the global estimate meets max(rel_tol*|I|, abs_tol).
template <class F>
double integrate(F&& f, double a, double b,
                 double rel_tol = 1e-11, double abs_tol = 1e-300,
                 int max_intervals = 20000) {
    struct Seg {
        double a, b, value, err;
    };
    std::vector<Seg> segs;
    segs.reserve(256);
    double e0;
    double v0 = detail::gk15(f, a, b, e0);
    segs.push_back({a, b, v0, e0});

    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].err;
            if (segs[i].err > worst_err) {
                worst_err = segs[i].err;
                worst = i;
            }
        }
        if (err <= std::max(rel_tol * std::abs(total), abs_tol)) return total;
        if (static_cast<int>(segs.size()) >= max_intervals)
            throw ConvergenceError("adaptive quadrature: interval budget exhausted",
                                   {err, std::abs(total)});
        Seg s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b)
            throw ConvergenceError("adaptive quadrature: interval collapsed");
        double el, er;
        const double vl = detail::gk15(f, s.a, mid, el);
        const double vr = detail::gk15(f, mid, s.b, er);
        segs[worst] = {s.a, mid, vl, el};
        segs.push_back({mid, s.b, vr, er});
    }
}

// Adaptive quadrature over contiguous segments [pts[0], pts[1], ..., pts.back()].
template <class F>
double integrate_segments(F&& f, const std::vector<double>& pts,
                          double rel_tol = 1e-11, double abs_tol = 1e-300) {
    // First pass at a loose tolerance to size the segments against each other.
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double e;
        rough += std::abs(detail::gk15(f, pts[i], pts[i + 1], e));
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], rel_tol,
                           std::max(abs_tol, rel_tol * rough * 1e-3));
    return total;
}

} // namespace kapitsa
